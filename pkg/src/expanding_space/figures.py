"""
Plot-ready data for figures 1-9 and the shape checks each one must pass.

Figures 1-2 compare the three expansion laws, each shifted so the outcome
is certain at t = 1.  Figures 3-6 follow the double-exponential law
n = a exp(lambda t).  Figures 7-9 use the bundled synthetic Weimar series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import hyperinflation as hi
from . import models

FIGURE_NUMBERS = tuple(range(1, 10))

# Weimar rates; the comparison uses the base power law s(t) = t.
COMPARISON_SPECS = {
    "exponential": models.exponential(lam=0.1001),
    "power": models.power(a=1.0),
    "double_exponential": models.double_exponential(a=1.0, lam=0.1629),
}
DOUBLE_EXP_SPEC = models.double_exponential(a=1.0, lam=0.1629)
T_START, T_END, T_STEP = 1.0, 36.0, 0.5

AFFINE_TOL = 1e-9


def time_grid(start: float, end: float, step: float) -> np.ndarray:
    """``start, start + step, ...`` up to ``end`` inclusive (within rounding)."""
    if not step > 0:
        raise ValueError(f"step must be positive, got {step}")
    if not start < end:
        raise ValueError(f"t_start must be below t_end, got {start} >= {end}")
    count = int(math.floor((end - start) / step + 1e-9)) + 1
    return start + step * np.arange(count)


@dataclass(frozen=True)
class Figure:
    number: int
    title: str
    columns: dict

    @property
    def filename(self) -> str:
        return f"figure{self.number}.csv"


_QUANTITY = {"p": models.probability, "entropy": models.entropy}


def _comparison(quantity):
    t = time_grid(T_START, T_END, T_STEP)
    cols = {"t": t}
    for name, spec in COMPARISON_SPECS.items():
        cols[f"{quantity}_{name}"] = _QUANTITY[quantity](
            models.align_to_unit_time(spec), t
        )
    return cols


def figure(number: int) -> Figure:
    t = time_grid(T_START, T_END, T_STEP)
    spec = DOUBLE_EXP_SPEC
    if number == 1:
        return Figure(1, "p(x0|t) by expansion law, aligned at t=1", _comparison("p"))
    if number == 2:
        return Figure(2, "H(t) by expansion law, aligned at t=1", _comparison("entropy"))
    if number == 3:
        n = models.doublings_at(spec, t)
        return Figure(3, "doublings n against t", {"t": t, "n": n, "ln_n": np.log(n)})
    if number == 4:
        ln_s = models.log_sample_space(spec, t)
        return Figure(
            4,
            "double-exponential sample space",
            {"t": t, "n": models.doublings_at(spec, t), "ln_s": ln_s,
             "log10_s": ln_s / math.log(10.0)},
        )
    if number == 5:
        ln_s = models.log_sample_space(spec, t)
        return Figure(5, "ln ln s(t)", {"t": t, "ln_s": ln_s, "ln_ln_s": np.log(ln_s)})
    if number == 6:
        ln_p = models.log_probability(spec, t)
        h = models.entropy(spec, t)
        return Figure(
            6,
            "semi-log p(x0|t) and H(t)",
            {"t": t, "p": np.exp(ln_p), "ln_p": ln_p,
             "log10_p": ln_p / math.log(10.0), "entropy_nats": h,
             "ln_entropy": np.log(h)},
        )

    series = hi.load_sample_series()
    if number == 7:
        return Figure(
            7,
            "paper Marks per gold Mark",
            {"t": series.t, "m": series.m, "log10_m": np.log10(series.m)},
        )
    if number == 8:
        tb = hi.WEIMAR_PIECEWISE["t_b"]
        late = series.window(tb, None)
        fit = hi.fit_double_exponential(late)
        return Figure(
            8,
            "ln ln m from November 1922",
            {"t": late.t, "m": late.m, "ln_ln_m": np.log(np.log(late.m)),
             "ln_ln_m_fit": np.log(fit.log_m(late.t))},
        )
    if number == 9:
        _, pp = hi.purchasing_power(series)
        _, h = hi.entropy_series(series)
        return Figure(
            9,
            "entropy of paper Mark purchasing power",
            {"t": series.t, "purchasing_power": pp, "entropy_nats": h},
        )
    raise ValueError(f"no figure {number}; expected one of {FIGURE_NUMBERS}")


def _nondecreasing(x):
    return bool(np.all(np.diff(x) >= 0))


def _nonincreasing(x):
    return bool(np.all(np.diff(x) <= 0))


def affine_deviation(x, y) -> float:
    """Largest distance of ``y`` from the straight line through its end points."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    line = y[0] + (y[-1] - y[0]) * (x - x[0]) / (x[-1] - x[0])
    return float(np.max(np.abs(y - line)))


def check_figure(number: int, cols) -> list[str]:
    """Shape violations of a figure's data; empty when it passes."""
    failures = []

    def need(ok, message):
        if not ok:
            failures.append(f"figure {number}: {message}")

    def affine(x_name, y_name):
        dev = affine_deviation(cols[x_name], cols[y_name])
        need(dev < AFFINE_TOL, f"{y_name} not affine in {x_name} (deviation {dev:.3g})")

    need(_nondecreasing(cols["t"]) and len(cols["t"]) >= 2, "t grid not increasing")
    if number == 1:
        for name in COMPARISON_SPECS:
            p = cols[f"p_{name}"]
            need(_nonincreasing(p), f"p_{name} increases")
            need(p[0] == 1.0, f"p_{name} is {p[0]} at t={cols['t'][0]}, expected 1")
    elif number == 2:
        for name in COMPARISON_SPECS:
            h = cols[f"entropy_{name}"]
            need(_nondecreasing(h), f"entropy_{name} decreases")
            need(h[0] == 0.0, f"entropy_{name} is {h[0]} at t={cols['t'][0]}, expected 0")
    elif number == 3:
        need(_nondecreasing(cols["n"]), "n decreases")
        affine("t", "ln_n")
    elif number == 4:
        need(_nondecreasing(cols["ln_s"]), "ln_s decreases")
    elif number == 5:
        need(_nondecreasing(cols["ln_s"]), "ln_s decreases")
        affine("t", "ln_ln_s")
    elif number == 6:
        need(_nonincreasing(cols["p"]), "p increases")
        need(_nondecreasing(cols["entropy_nats"]), "entropy decreases")
        affine("t", "ln_entropy")
    elif number == 7:
        need(_nondecreasing(cols["m"]), "m decreases")
    elif number == 8:
        need(_nondecreasing(cols["ln_ln_m"]), "ln_ln_m decreases")
    elif number == 9:
        need(_nonincreasing(cols["purchasing_power"]), "purchasing power increases")
        need(_nondecreasing(cols["entropy_nats"]), "entropy decreases")
    return failures
