"""Independent expansion processes acting on one sample space at once.

Sizes and probabilities multiply, so their logarithms (and the entropies)
add.  Sums use :func:`math.fsum` so the result does not depend on the
order of the components.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import models
from .models import LN2, ExpansionSpec


@dataclass(frozen=True)
class CompositeSpec:
    components: tuple[ExpansionSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise ValueError("a composite needs at least one component")

    def __len__(self):
        return len(self.components)


def compose(components) -> CompositeSpec:
    return CompositeSpec(tuple(components))


def _exact_sum(terms):
    if np.ndim(terms[0]) == 0:
        return math.fsum(terms)
    stacked = np.broadcast_arrays(*terms)
    flat = [np.ravel(x) for x in stacked]
    out = np.array([math.fsum(col) for col in zip(*flat)])
    return out.reshape(stacked[0].shape)


def composite_log_sample_space(c: CompositeSpec, t):
    return _exact_sum([models.log_sample_space(s, t) for s in c.components])


def composite_log_probability(c: CompositeSpec, t):
    return _exact_sum([models.log_probability(s, t) for s in c.components])


def composite_entropy(c: CompositeSpec, t):
    """Entropy in nats: the sum of the component entropies."""
    return _exact_sum([models.entropy(s, t) for s in c.components])


def composite_doublings(c: CompositeSpec, t):
    """Equivalent doubling count of the combined process (clamped at zero)."""
    return composite_log_sample_space(c, t) / LN2
