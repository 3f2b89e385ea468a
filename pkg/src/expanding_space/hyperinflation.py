"""
Exchange-rate series of paper Marks per gold Mark: ingestion, log-linear
and double-log-linear fits, purchasing power and entropy.

Time is in months, ``t = 0`` at mid-1920 and ``t = 23`` at November 1922.
The purchasing power ``1/m`` of a paper Mark plays the role of the outcome
probability, so the entropy of the process is ``H = ln m`` (clamped at 0).

All fits are ordinary least squares on ``ln m`` or ``ln ln m`` and are solved
in closed form.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .tables import write_rows, write_table

INPUT_HEADER = ("t", "marks_per_gold_mark")
SERIES_HEADER = ("t", "m", "purchasing_power", "entropy_nats")
REPORT_HEADER = ("model", "param", "value")

EXPONENTIAL = "exponential"
PIECEWISE = "piecewise"
DOUBLE_EXPONENTIAL = "double_exponential"

# Fitted Weimar parameters; t_b = 23 is November 1922.
WEIMAR_PIECEWISE = {"A": 10.0, "lambda1": 0.1001, "lambda2": 0.1629, "t_b": 23.0}
# Reported end-1923 rate: 1 paper Mark = 1e-12 gold Mark.
REPORTED_ENDPOINT_M = 1e12

SAMPLE_DATASET = "synthetic_paper.csv"

# Residual RMS differences below this are rounding noise in ln m.
TIE_TOL = 1e-12


class SeriesError(ValueError):
    """Malformed or invalid exchange-rate data."""


class FitError(ValueError):
    """A fit cannot be performed on the given data."""


@dataclass(frozen=True, eq=False)
class ExchangeSeries:
    t: np.ndarray
    m: np.ndarray

    def __post_init__(self):
        t = np.array(self.t, dtype=float)
        m = np.array(self.m, dtype=float)
        if t.ndim != 1 or t.shape != m.shape:
            raise SeriesError("t and m must be 1-d sequences of equal length")
        if t.size == 0:
            raise SeriesError("empty series")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(m))):
            raise SeriesError("series contains non-finite values")
        if np.any(np.diff(t) <= 0):
            i = int(np.argmax(np.diff(t) <= 0)) + 1
            raise SeriesError(f"t must be strictly increasing (point {i}: t={t[i]})")
        if np.any(m <= 0):
            i = int(np.argmax(m <= 0))
            raise SeriesError(f"m must be positive (point {i}: m={m[i]})")
        t.flags.writeable = False
        m.flags.writeable = False
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "m", m)

    def __len__(self):
        return self.t.size

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.t.tolist(), self.m.tolist()))

    def window(self, lo=None, hi=None) -> "ExchangeSeries":
        """Points with ``lo <= t <= hi``; raises if none remain."""
        lo = -math.inf if lo is None else lo
        hi = math.inf if hi is None else hi
        keep = (self.t >= lo) & (self.t <= hi)
        if not np.any(keep):
            raise FitError(f"no points in range [{lo}, {hi}]")
        return ExchangeSeries(self.t[keep], self.m[keep])


def load_series(source) -> ExchangeSeries:
    """
    Parse ``t,marks_per_gold_mark`` CSV from a path or text stream.

    Blank lines and lines starting with ``#`` are skipped.  Errors carry the
    1-based line number of the offending record.
    """
    if isinstance(source, (str, Path)):
        with open(source, newline="", encoding="utf-8") as fh:
            return load_series(fh)

    header = None
    t, m = [], []
    for lineno, line in enumerate(source, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        fields = [f.strip() for f in next(csv.reader([text]))]
        if header is None:
            header = tuple(fields)
            if header != INPUT_HEADER:
                raise SeriesError(
                    f"line {lineno}: expected header {','.join(INPUT_HEADER)!r}, "
                    f"got {text!r}"
                )
            continue
        if len(fields) != 2:
            raise SeriesError(f"line {lineno}: expected 2 fields, got {len(fields)}")
        try:
            tv, mv = float(fields[0]), float(fields[1])
        except ValueError:
            raise SeriesError(f"line {lineno}: not a number in {text!r}") from None
        if not (math.isfinite(tv) and math.isfinite(mv)):
            raise SeriesError(f"line {lineno}: non-finite value in {text!r}")
        if mv <= 0:
            raise SeriesError(f"line {lineno}: m must be positive, got {mv}")
        if t and tv <= t[-1]:
            raise SeriesError(
                f"line {lineno}: t={tv} does not increase on previous t={t[-1]}"
            )
        t.append(tv)
        m.append(mv)
    if header is None:
        raise SeriesError("missing header")
    if not t:
        raise SeriesError("no data rows")
    return ExchangeSeries(t, m)


def load_sample_series() -> ExchangeSeries:
    """The bundled series, synthesized from the fitted Weimar equations (not observed data)."""
    text = resources.files(__package__).joinpath("data", SAMPLE_DATASET).read_text(
        encoding="utf-8"
    )
    return load_series(io.StringIO(text))


def write_dataset(series: ExchangeSeries, stream, comment=None) -> None:
    """Write ``series`` in the input format accepted by :func:`load_series`."""
    if comment:
        for line in comment.splitlines():
            stream.write(f"# {line}\n")
    write_table(stream, INPUT_HEADER, [series.t, series.m])


def purchasing_power(series: ExchangeSeries):
    """Gold Marks bought by one paper Mark, ``1/m``, as ``(t, values)``."""
    return series.t, 1.0 / series.m


def log_purchasing_power(series: ExchangeSeries):
    return series.t, -np.log(series.m)


def entropy_series(series: ExchangeSeries):
    """``(t, max(0, ln m))``; a rate below one is treated as no uncertainty."""
    return series.t, np.maximum(np.log(series.m), 0.0)


def write_series(series: ExchangeSeries, stream) -> None:
    _, pp = purchasing_power(series)
    _, h = entropy_series(series)
    write_table(stream, SERIES_HEADER, [series.t, series.m, pp, h])


@dataclass(frozen=True)
class FitResult:
    model: str
    params: dict
    residual_rms: float
    n_points: int
    diagnostics: dict = field(default_factory=dict)

    def log_m(self, t):
        return log_model(self.model, self.params, t)

    def predict(self, t):
        return np.exp(self.log_m(t))


def _line_fit(x, y):
    """Closed-form least-squares line; returns (intercept, slope, residuals)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < 2:
        raise FitError(f"need at least 2 points, got {x.size}")
    xc = x - x.mean()
    sxx = float(np.dot(xc, xc))
    if sxx == 0.0:
        raise FitError("degenerate design: all t values are equal")
    slope = float(np.dot(xc, y - y.mean())) / sxx
    intercept = float(y.mean() - slope * x.mean())
    return intercept, slope, y - (intercept + slope * x)


def _rms(residuals) -> float:
    residuals = np.asarray(residuals, dtype=float)
    return float(np.sqrt(np.mean(residuals**2)))


def fit_exponential_segment(series: ExchangeSeries, range=None) -> FitResult:
    """Fit ``m = A exp(lambda t)`` on ``lo <= t <= hi``."""
    part = series.window(*range) if range is not None else series
    intercept, slope, resid = _line_fit(part.t, np.log(part.m))
    return FitResult(
        EXPONENTIAL,
        {"A": math.exp(intercept), "lambda": slope},
        _rms(resid),
        len(part),
    )


def fit_piecewise(series: ExchangeSeries, t_b: float) -> FitResult:
    """
    Two exponential segments joined continuously at ``t_b``.

    The first segment is fitted freely on ``t <= t_b``.  The second is
    pinned to the first segment's value at ``t_b`` and only its rate is
    fitted, on ``t >= t_b``.
    """
    t, y = series.t, np.log(series.m)
    left = t <= t_b
    right = t >= t_b
    if np.count_nonzero(left) < 2 or np.count_nonzero(right) < 2:
        raise FitError(
            f"breakpoint t_b={t_b} needs at least 2 points on each side "
            f"(have {np.count_nonzero(left)} and {np.count_nonzero(right)})"
        )
    intercept, lam1, resid1 = _line_fit(t[left], y[left])
    y_b = intercept + lam1 * t_b
    dt = t[right] - t_b
    sxx = float(np.dot(dt, dt))
    if sxx == 0.0:
        raise FitError(f"no points after breakpoint t_b={t_b}")
    lam2 = float(np.dot(dt, y[right] - y_b)) / sxx

    after = t > t_b
    resid2 = y[after] - (y_b + lam2 * (t[after] - t_b))
    return FitResult(
        PIECEWISE,
        {"A": math.exp(intercept), "lambda1": lam1, "lambda2": lam2, "t_b": float(t_b)},
        _rms(np.concatenate([resid1, resid2])),
        len(series),
    )


def scan_breakpoint(series: ExchangeSeries, candidates):
    """
    Try each candidate breakpoint and keep the one with the smallest
    residual RMS.  Residuals equal up to rounding count as ties and go to
    the earliest candidate.  Candidates that cannot be fitted are skipped.
    """
    best = None
    reasons = []
    for t_b in sorted(float(c) for c in candidates):
        try:
            fit = fit_piecewise(series, t_b)
        except FitError as exc:
            reasons.append(str(exc))
            continue
        if best is None or (
            fit.residual_rms < best[1].residual_rms
            and not math.isclose(fit.residual_rms, best[1].residual_rms,
                                 rel_tol=1e-9, abs_tol=TIE_TOL)
        ):
            best = (t_b, fit)
    if best is None:
        detail = "; ".join(reasons) if reasons else "no candidates given"
        raise FitError(f"no valid breakpoint candidate ({detail})")
    return best


def fit_double_exponential(series: ExchangeSeries, range=None) -> FitResult:
    """
    Fit ``m = exp(c * exp(lambda * (t - t_lo)))`` by a straight line through
    ``ln ln m``; ``t_lo`` is the first time in range.
    """
    part = series.window(*range) if range is not None else series
    if np.any(part.m <= 1.0):
        bad = part.t[part.m <= 1.0]
        raise FitError(
            f"double-log fit needs m > 1; m <= 1 at t={bad.tolist()}"
        )
    t_ref = float(part.t[0])
    intercept, slope, resid = _line_fit(part.t - t_ref, np.log(np.log(part.m)))
    return FitResult(
        DOUBLE_EXPONENTIAL,
        {"c": math.exp(intercept), "lambda": slope, "t_ref": t_ref},
        _rms(resid),
        len(part),
    )


def log_model(model: str, params, t):
    """``ln m(t)`` for a fitted or hand-specified model."""
    t = np.asarray(t, dtype=float)
    if model == EXPONENTIAL:
        return math.log(params["A"]) + params["lambda"] * t
    if model == PIECEWISE:
        ln_a, t_b = math.log(params["A"]), params["t_b"]
        y_b = ln_a + params["lambda1"] * t_b
        return np.where(
            t <= t_b,
            ln_a + params["lambda1"] * t,
            y_b + params["lambda2"] * (t - t_b),
        )
    if model == DOUBLE_EXPONENTIAL:
        return params["c"] * np.exp(params["lambda"] * (t - params.get("t_ref", 0.0)))
    raise ValueError(f"unknown model {model!r}")


def _model_values(model, params, t):
    # Products of exponentials rather than exp(ln m), so m(0) = A exactly.
    if model == EXPONENTIAL:
        return params["A"] * np.exp(params["lambda"] * t)
    if model == PIECEWISE:
        A, t_b = params["A"], params["t_b"]
        m_b = A * math.exp(params["lambda1"] * t_b)
        return np.where(
            t <= t_b,
            A * np.exp(params["lambda1"] * t),
            m_b * np.exp(params["lambda2"] * (t - t_b)),
        )
    return np.exp(log_model(model, params, t))


def _check_params(model, params):
    required = {
        EXPONENTIAL: ("A", "lambda"),
        PIECEWISE: ("A", "lambda1", "lambda2", "t_b"),
        DOUBLE_EXPONENTIAL: ("c", "lambda"),
    }
    if model not in required:
        raise ValueError(f"unknown model {model!r}")
    missing = [k for k in required[model] if k not in params]
    if missing:
        raise ValueError(f"{model} model is missing parameters {missing}")
    for k, v in params.items():
        if not math.isfinite(v):
            raise ValueError(f"parameter {k} must be finite, got {v}")
    prefactor = "c" if model == DOUBLE_EXPONENTIAL else "A"
    if params[prefactor] <= 0:
        raise ValueError(f"{prefactor} must be positive, got {params[prefactor]}")


def synthesize_series(model: str, params, t, noise: float = 0.0, seed=None) -> ExchangeSeries:
    """
    Evaluate a model on the grid ``t``.

    ``noise`` is the standard deviation of multiplicative lognormal noise,
    drawn from a PCG64 generator seeded with ``seed``.
    """
    _check_params(model, params)
    t = np.asarray(t, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise SeriesError("grid must be a non-empty 1-d sequence")
    if np.any(np.diff(t) <= 0):
        raise SeriesError("grid must be strictly increasing")
    if noise < 0:
        raise ValueError(f"noise must be non-negative, got {noise}")
    m = _model_values(model, params, t)
    if noise > 0:
        rng = np.random.Generator(np.random.PCG64(seed))
        m = m * np.exp(rng.normal(0.0, noise, size=t.size))
    return ExchangeSeries(t, m)


def endpoint_discrepancy(fit: FitResult, t_end: float, m_endpoint: float = REPORTED_ENDPOINT_M):
    """
    Compare a fitted model's value at ``t_end`` with a reported endpoint rate.

    The single-exponential second segment reaches only ~1e3 Marks by late
    1923, nine decades short of the reported 1e12.  This reports the gap
    rather than hiding it.
    """
    log10_fit = float(fit.log_m(t_end)) / math.log(10.0)
    log10_end = math.log10(m_endpoint)
    return {
        "t_end": float(t_end),
        "log10_m_model": log10_fit,
        "log10_m_reported": log10_end,
        "gap_decades": log10_end - log10_fit,
    }


def write_fit_report(fit: FitResult, stream, diagnostics=None) -> None:
    """
    ``model,param,value`` rows: parameters, then ``residual_rms`` and
    ``n_points``, then any diagnostics under the model name ``diagnostic``.
    """
    rows = [(fit.model, k, v) for k, v in fit.params.items()]
    rows.append((fit.model, "residual_rms", fit.residual_rms))
    rows.append((fit.model, "n_points", int(fit.n_points)))
    extra = dict(fit.diagnostics)
    extra.update(diagnostics or {})
    rows.extend(("diagnostic", k, v) for k, v in extra.items())
    write_rows(stream, REPORT_HEADER, rows)
