"""Closed-form predictions for how often pool slots get drawn.

A slot in the degree-``d`` pool is hit a Poisson(``d``) number of times, and a
slot in a degree-1 pool blown up by ``b`` is hit Poisson(``1/b``) times.  These
give the expected number of nodes realized at each degree, which is what the
sampler actually delivers rather than the histogram it was asked for.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, pdtrc

from dirnull.graph_core import DegreeHistogram
from dirnull.pool_sampler import build_pools

DEFAULT_X_MAX = 64


def poisson_realization_pmf(d: float, x: int) -> float:
    """Probability that a slot of a degree-``d`` pool is drawn exactly ``x`` times."""
    if d <= 0:
        raise ValueError("pool degree must be positive")
    if x < 0:
        return 0.0
    return math.exp(x * math.log(d) - d - math.lgamma(x + 1))


def blowup_realization_pmf(b: float, x: int) -> float:
    """Probability that a degree-1 slot is drawn ``x`` times when the pool has
    ``b * n_1`` slots: ``exp(-1/b) / (b**x * x!)``."""
    if b < 1:
        raise ValueError("blowup factor must be >= 1")
    if x < 0:
        return 0.0
    return math.exp(-1.0 / b - x * math.log(b) - math.lgamma(x + 1))


@dataclass(frozen=True)
class RealizedDegreeExpectation:
    """Expected number of pool slots drawn exactly ``x`` times, ``x = 0..x_max``.

    ``tail`` is the expected number drawn more than ``x_max`` times, so
    ``counts.sum() + tail == total_slots``.  The ``x = 0`` entry counts unused
    slots, not the histogram's degree-0 nodes.
    """

    counts: np.ndarray
    tail: float
    total_slots: int
    blowup: int

    @property
    def x_max(self) -> int:
        return int(self.counts.size - 1)

    def __getitem__(self, x: int) -> float:
        return float(self.counts[x]) if 0 <= x < self.counts.size else 0.0


def _poisson_rows(lams: np.ndarray, xs: np.ndarray) -> np.ndarray:
    lams = lams[:, None]
    return np.exp(xs[None, :] * np.log(lams) - lams - gammaln(xs[None, :] + 1))


def expected_realized_counts(
    hist: DegreeHistogram, b: int = 1, x_max: int = DEFAULT_X_MAX
) -> RealizedDegreeExpectation:
    pt = build_pools(hist, b)
    xs = np.arange(x_max + 1, dtype=float)
    # per pool: slots * pmf with rate (pool weight * m) / slots
    rates = pt.degrees * hist.counts[pt.degrees] / pt.sizes
    counts = (pt.sizes[:, None] * _poisson_rows(rates.astype(float), xs)).sum(axis=0)
    tail = float((pt.sizes * pdtrc(x_max, rates.astype(float))).sum())
    return RealizedDegreeExpectation(counts, tail, pt.total_slots, pt.blowup)
