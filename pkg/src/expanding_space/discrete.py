"""
The discrete doubling-and-partitioning process, computed exactly.

A determined outcome lives in a sample space of ``s0`` cells.  Each doubling
appends an equal block of cells, so after ``n`` doublings the space
``[1, s0 * 2**n]`` splits into ``2**n`` contiguous partitions of ``s0``
cells each and the outcome sits in any given partition with probability
``(1/2)**n``.  These routines compute that probability and the entropy by
brute force so they can serve as an oracle for :mod:`expanding_space.models`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

MAX_EXACT_N = 62
MAX_ENUMERATE_N = 30
MAX_MONTE_CARLO_N = 20

RNG_ALGORITHM = "numpy.PCG64"

_CHUNK = 1 << 20


@dataclass(frozen=True)
class DoublingState:
    n: int = 0
    s0: int = 1

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"n must be a non-negative integer, got {self.n!r}")
        if isinstance(self.s0, bool) or not isinstance(self.s0, int) or self.s0 < 1:
            raise ValueError(f"s0 must be a positive integer, got {self.s0!r}")

    @property
    def partitions(self) -> int:
        return 1 << self.n

    @property
    def size(self) -> int:
        """Total number of cells, ``s0 * 2**n``."""
        return self.s0 << self.n


def expand_once(state: DoublingState) -> DoublingState:
    if state.n + 1 > MAX_EXACT_N:
        raise OverflowError(
            f"refusing to expand past n={MAX_EXACT_N} doublings; "
            "use the log-domain formulas for larger n"
        )
    return DoublingState(state.n + 1, state.s0)


def partition_bounds(state: DoublingState, k: int) -> tuple[int, int]:
    """Inclusive cell range ``[k*s0 + 1, (k+1)*s0]`` of partition ``k``."""
    if not 0 <= k < state.partitions:
        raise IndexError(f"partition {k} out of range for n={state.n}")
    return k * state.s0 + 1, (k + 1) * state.s0


def partition_of(state: DoublingState, value):
    """Zero-based partition index of a cell value in ``[1, size]``."""
    return (value - 1) // state.s0


def partition_probability(state: DoublingState) -> Fraction:
    """Exact probability ``(1/2)**n`` that the outcome lies in a given partition."""
    if state.n > MAX_EXACT_N:
        raise OverflowError(f"exact form limited to n <= {MAX_EXACT_N}")
    return Fraction(state.s0, state.size)


def enumerate_entropy(state: DoublingState) -> float:
    """
    Entropy in nats, summing ``-p ln p`` over every partition.

    Each partition's probability is its cell count over the total cell
    count; nothing here assumes the closed form ``n ln 2``.
    """
    if state.n > MAX_ENUMERATE_N:
        raise ValueError(
            f"enumeration limited to n <= {MAX_ENUMERATE_N} (2**n terms)"
        )
    total = state.size
    partials = []
    for start in range(0, state.partitions, _CHUNK):
        stop = min(start + _CHUNK, state.partitions)
        k = np.arange(start, stop, dtype=np.int64)
        lower, upper = k * state.s0 + 1, (k + 1) * state.s0
        p = (upper - lower + 1) / total
        partials.append(float(np.sum(-p * np.log(p))))
    return math.fsum(partials)


@dataclass(frozen=True)
class MonteCarloEstimate:
    frequency: float
    stderr: float
    hits: int
    draws: int
    seed: int
    partition: int = 0
    algorithm: str = RNG_ALGORITHM


def monte_carlo_partition_probability(
    state: DoublingState, draws: int, seed: int, partition: int = 0
) -> MonteCarloEstimate:
    """
    Draw cells uniformly from ``[1, s0 * 2**n]`` and report how often they
    land in ``partition``, with the binomial standard error of the estimate.
    """
    if state.n > MAX_MONTE_CARLO_N:
        raise ValueError(f"Monte Carlo limited to n <= {MAX_MONTE_CARLO_N}")
    if draws < 1:
        raise ValueError(f"draws must be >= 1, got {draws}")
    partition_bounds(state, partition)

    rng = np.random.Generator(np.random.PCG64(seed))
    hits = 0
    remaining = draws
    while remaining:
        batch = min(remaining, _CHUNK)
        values = rng.integers(1, state.size, size=batch, endpoint=True)
        hits += int(np.count_nonzero(partition_of(state, values) == partition))
        remaining -= batch

    frequency = hits / draws
    stderr = math.sqrt(frequency * (1.0 - frequency) / draws)
    return MonteCarloEstimate(frequency, stderr, hits, draws, seed, partition)
