"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line; ``conftest.py`` prints them in the
terminal summary.  Run alone with ``pytest tests/test_acceptance.py``.
"""

import math
import time
from fractions import Fraction

import numpy as np

from expanding_space import cli, composition, discrete, figures, models
from expanding_space import hyperinflation as hi
from expanding_space.tables import read_table

RESULTS = []


def record(number, title, ok, detail):
    RESULTS.append((number, title, bool(ok), detail))
    assert ok, f"criterion {number} ({title}): {detail}"


def test_01_discrete_oracle_equivalence():
    start = time.perf_counter()
    worst = 0.0
    exact = True
    for n in range(21):
        state = discrete.DoublingState(n)
        worst = max(worst, abs(discrete.enumerate_entropy(state) - n * math.log(2)))
        exact &= discrete.partition_probability(state) == Fraction(1, 2**n)
    elapsed = time.perf_counter() - start
    record(1, "discrete oracle equivalence", worst < 1e-9 and exact and elapsed < 10,
           f"max |H_enum - n ln2| = {worst:.2e}, exact rationals: {exact}, {elapsed:.2f}s")


REFERENCE_SPECS = {
    "exponential": models.exponential(lam=0.1),
    "power": models.power(a=2),
    "double_exponential": models.double_exponential(a=1, lam=0.1629),
}


def test_02_closed_form_duality():
    start = time.perf_counter()
    t = np.linspace(0.01, 50.0, 1000)
    worst = max(
        float(np.max(np.abs(models.entropy(spec, t) + models.log_probability(spec, t))))
        for spec in REFERENCE_SPECS.values()
    )
    elapsed = time.perf_counter() - start
    record(2, "closed-form duality", worst < 1e-12 and elapsed < 1,
           f"max |H + ln p| = {worst:.2e} over 3 x 1000 points, {elapsed:.3f}s")


def test_03_table1_shapes():
    t = np.linspace(1.0, 50.0, 100)
    devs = {
        "exp H vs t": figures.affine_deviation(t, models.entropy(REFERENCE_SPECS["exponential"], t)),
        "power H vs ln t": figures.affine_deviation(
            np.log(t), models.entropy(REFERENCE_SPECS["power"], t)),
        "dexp ln H vs t": figures.affine_deviation(
            t, np.log(models.entropy(REFERENCE_SPECS["double_exponential"], t))),
    }
    record(3, "Table 1 shapes", all(d < 1e-9 for d in devs.values()),
           ", ".join(f"{k}: {v:.1e}" for k, v in devs.items()))


def _random_spec(rng):
    kind = rng.integers(3)
    t0 = rng.uniform(-2, 2)
    if kind == 0:
        return models.exponential(lam=rng.uniform(0.01, 1.0), t0=t0)
    if kind == 1:
        return models.power(a=rng.uniform(0.1, 4.0), t0=t0)
    return models.double_exponential(a=rng.uniform(0.1, 4.0), lam=rng.uniform(0.01, 0.3), t0=t0)


def _exact_column_sum(arrays):
    # correctly rounded sum per time point; naive summation at H ~ 1e4 is
    # already off by more than 1e-12
    return np.array([math.fsum(col) for col in zip(*arrays)])


def test_04_composition():
    rng = np.random.default_rng(20210523)
    worst_h = worst_p = largest = 0.0
    kinds = set()
    for _ in range(100):
        parts = [_random_spec(rng) for _ in range(rng.integers(1, 5))]
        kinds.update(p.kind for p in parts)
        c = composition.compose(parts)
        t = np.linspace(2.5, 30.0, 12)
        h = composition.composite_entropy(c, t)
        ln_p = composition.composite_log_probability(c, t)
        h_ref = _exact_column_sum([models.entropy(p, t) for p in parts])
        ln_p_ref = _exact_column_sum([models.log_probability(p, t) for p in parts])
        largest = max(largest, float(np.max(h_ref)))
        worst_h = max(worst_h, float(np.max(np.abs(h - h_ref))))
        worst_p = max(worst_p, float(np.max(np.abs(ln_p - ln_p_ref))))
    record(4, "composition additivity", worst_h < 1e-12 and worst_p < 1e-12 and len(kinds) == 3,
           f"max entropy gap {worst_h:.1e}, max log-probability gap {worst_p:.1e} "
           f"(entropies up to {largest:.3g} nats)")


def test_05_monte_carlo():
    start = time.perf_counter()
    draws = 10**6
    worst = 0.0
    for n in (1, 3, 8):
        p = 2.0**-n
        se = math.sqrt(p * (1 - p) / draws)
        for seed in (1, 2, 3):
            est = discrete.monte_carlo_partition_probability(
                discrete.DoublingState(n), draws, seed)
            worst = max(worst, abs(est.frequency - p) / se)
    elapsed = time.perf_counter() - start
    record(5, "Monte Carlo occupancy", worst < 4 and elapsed < 30,
           f"worst deviation {worst:.2f} standard errors, {elapsed:.2f}s")


def test_06_weimar_round_trip():
    ref = hi.WEIMAR_PIECEWISE
    keys = ("A", "lambda1", "lambda2")
    series = hi.load_sample_series()
    fit = hi.fit_piecewise(series, ref["t_b"])
    clean = max(abs(fit.params[k] / ref[k] - 1) for k in keys)

    noisy = 0.0
    for seed in (1, 2, 3):
        s = hi.synthesize_series(hi.PIECEWISE, ref, series.t, noise=0.01, seed=seed)
        f = hi.fit_piecewise(s, ref["t_b"])
        noisy = max(noisy, max(abs(f.params[k] / ref[k] - 1) for k in keys))

    t_b, _ = hi.scan_breakpoint(series, range(20, 27))
    record(6, "Weimar round trip", clean < 1e-6 and noisy < 0.05 and t_b == 23,
           f"noiseless rel err {clean:.1e}, 1% noise rel err {noisy:.2%}, scanned t_b={t_b:g}")


def test_07_double_exponential_fit():
    spec = models.double_exponential(a=1, lam=0.1629)
    t = np.arange(0.0, 36.0)
    m = np.exp(-models.log_probability(spec, t))
    fit = hi.fit_double_exponential(hi.ExchangeSeries(t, m))
    err = abs(fit.params["lambda"] - 0.1629)
    record(7, "double-exponential fit", err < 1e-6,
           f"lambda = {fit.params['lambda']:.10f} (error {err:.1e})")


def test_08_endpoint_entropy():
    _, h = hi.entropy_series(hi.ExchangeSeries([0.0], [1e12]))
    err = abs(h[0] - 12 * math.log(10))
    record(8, "endpoint entropy", err < 1e-9, f"H(1e12) = {h[0]:.9f} (error {err:.1e})")


def test_09_figure_data(tmp_path, capsys):
    code = cli.run(["figures", "--which", "1..9", "--out", str(tmp_path)])
    capsys.readouterr()
    files = sorted(tmp_path.glob("figure*.csv"))
    failures = []
    for number in figures.FIGURE_NUMBERS:
        with open(tmp_path / f"figure{number}.csv") as fh:
            failures += figures.check_figure(number, read_table(fh))
    record(9, "figure data", code == 0 and len(files) == 9 and not failures,
           f"exit {code}, {len(files)} CSVs, {len(failures)} check failures {failures}")
