"""Probability and information entropy of a determined outcome whose sample
space expands with time, with an application to hyperinflation data."""

from .composition import (
    CompositeSpec,
    compose,
    composite_entropy,
    composite_log_probability,
    composite_log_sample_space,
)
from .discrete import (
    DoublingState,
    enumerate_entropy,
    expand_once,
    monte_carlo_partition_probability,
    partition_probability,
)
from .hyperinflation import (
    ExchangeSeries,
    FitResult,
    entropy_series,
    fit_double_exponential,
    fit_exponential_segment,
    fit_piecewise,
    load_series,
    purchasing_power,
    scan_breakpoint,
    synthesize_series,
)
from .models import (
    DomainError,
    ExpansionSpec,
    Kind,
    align_to_unit_time,
    doublings_at,
    entropy,
    log_probability,
    log_sample_space,
    probability,
)

__version__ = "0.1.0"
