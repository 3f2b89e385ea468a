"""
Closed-form sample-space size, outcome probability and entropy for
time-dependent expansions of a sample space.

Every expansion is described by the real-valued number of sample-space
doublings ``n(t)``; the remaining quantities follow from it:

    ln s(t) = n(t) * ln 2,    ln p(t) = -ln s(t),    H(t) = ln s(t)  [nats]

Sizes and probabilities are handled as natural logarithms because the
double-exponential regime overflows a float long before the entropy does.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

LN2 = math.log(2.0)


class DomainError(ValueError):
    """Raised when a time lies outside the domain of an expansion law."""


class Kind(str, enum.Enum):
    EXPONENTIAL = "exp"
    POWER = "power"
    DOUBLE_EXPONENTIAL = "dexp"


@dataclass(frozen=True)
class ExpansionSpec:
    """
    Functional form of the sample-space expansion.

    ``lam`` is the rate constant (exponential and double-exponential),
    ``a`` the exponent (power) or doubling-count scale (double-exponential).
    Times are shifted by ``t0`` before evaluation.  ``anchored`` selects the
    double-exponential variant ``n = a * (exp(lam * (t - t0)) - 1)``, which
    starts from a single-outcome sample space at ``t = t0``.
    """

    kind: Kind
    lam: float = 0.0
    a: float = 1.0
    t0: float = 0.0
    anchored: bool = False

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        for name in ("lam", "a", "t0"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)
        if self.kind is not Kind.POWER and self.lam < 0:
            raise ValueError(f"rate constant must be non-negative, got {self.lam}")
        if self.kind is not Kind.EXPONENTIAL and self.a <= 0:
            raise ValueError(f"a must be positive, got {self.a}")
        if self.anchored and self.kind is not Kind.DOUBLE_EXPONENTIAL:
            raise ValueError("only the double-exponential law has an anchored variant")


def exponential(lam: float, t0: float = 0.0) -> ExpansionSpec:
    return ExpansionSpec(Kind.EXPONENTIAL, lam=lam, t0=t0)


def power(a: float, t0: float = 0.0) -> ExpansionSpec:
    return ExpansionSpec(Kind.POWER, a=a, t0=t0)


def double_exponential(a: float, lam: float, t0: float = 0.0) -> ExpansionSpec:
    return ExpansionSpec(Kind.DOUBLE_EXPONENTIAL, lam=lam, a=a, t0=t0)


def _as_output(x):
    return float(x) if np.ndim(x) == 0 else x


def _shifted(spec: ExpansionSpec, t):
    tau = np.asarray(t, dtype=float) - spec.t0
    if spec.kind is Kind.POWER and np.any(tau <= 0):
        bad = float(np.ravel(tau)[np.argmax(np.ravel(tau) <= 0)]) + spec.t0
        raise DomainError(
            f"power expansion needs t - t0 > 0 (t0={spec.t0}), got t={bad:g}"
        )
    return tau


def _doublings(spec: ExpansionSpec, tau):
    if spec.kind is Kind.EXPONENTIAL:
        return spec.lam * tau / LN2
    if spec.kind is Kind.POWER:
        return spec.a * np.log(tau) / LN2
    if spec.anchored:
        return spec.a * np.expm1(spec.lam * tau)
    return spec.a * np.exp(spec.lam * tau)


def _raw_log_size(spec: ExpansionSpec, tau):
    # Direct forms keep round numbers exact (e.g. lam * t), instead of n * ln 2.
    if spec.kind is Kind.EXPONENTIAL:
        return spec.lam * tau
    if spec.kind is Kind.POWER:
        return spec.a * np.log(tau)
    return _doublings(spec, tau) * LN2


def doublings_at(spec: ExpansionSpec, t):
    """
    Real-valued number of doublings the sample space has undergone at ``t``.

    Not clamped: the exponential law gives ``n < 0`` before ``t0`` and the
    power law for ``t - t0 < 1``.
    """
    return _as_output(_doublings(spec, _shifted(spec, t)))


def log_sample_space(spec: ExpansionSpec, t):
    """
    ``ln s(t)``, clamped at zero since the sample space never drops below
    a single outcome.
    """
    return _as_output(np.maximum(_raw_log_size(spec, _shifted(spec, t)), 0.0))


def log_probability(spec: ExpansionSpec, t):
    return _as_output(-np.maximum(_raw_log_size(spec, _shifted(spec, t)), 0.0))


def probability(spec: ExpansionSpec, t):
    """
    Probability of the determined outcome, ``2 ** -n``.

    Underflows to 0.0 once ``n`` exceeds about 1074; use
    :func:`log_probability` there.
    """
    return _as_output(np.exp(log_probability(spec, t)))


def entropy(spec: ExpansionSpec, t):
    """Information entropy in nats, ``H = -ln p``."""
    return log_sample_space(spec, t)


def align_to_unit_time(spec: ExpansionSpec) -> ExpansionSpec:
    """
    Shift ``spec`` so that the outcome is certain (``p = 1``) at ``t = 1``.

    The double-exponential law is never at ``n = 0``, so it switches to the
    anchored variant ``n = a * (exp(lam * (t - 1)) - 1)``.
    """
    if spec.t0 != 0:
        raise ValueError(f"expected an unshifted spec, got t0={spec.t0}")
    if spec.kind is Kind.EXPONENTIAL:
        return replace(spec, t0=1.0)
    if spec.kind is Kind.POWER:
        return spec
    return replace(spec, t0=1.0, anchored=True)
