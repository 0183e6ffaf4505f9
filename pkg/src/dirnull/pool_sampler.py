"""Weighted vertex selection over per-degree pools.

Every degree ``d >= 1`` with ``n_d`` nodes gets a pool of ``n_d`` slots
(``b * n_1`` slots for degree 1) and a selection weight ``d * n_d / m``.
Each endpoint draw picks a pool by weight, then a slot uniformly inside it,
so a degree-``d`` slot is hit about ``d`` times.  The blowup ``b`` spreads the
degree-1 mass over more slots without changing the pool's weight, so fewer
degree-1 slots end up hit twice or more.

Drawn slots are finally relabelled by a random injective map into node ids.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from dirnull.errors import DistributionError
from dirnull.graph_core import DegreeHistogram


class CountingRNG:
    """Proxy around ``numpy.random.Generator`` that counts random values drawn.

    Only the calls the sampler makes are exposed.  Children from ``spawn``
    share the parent's counter.
    """

    def __init__(self, rng, _counter=None):
        if not isinstance(rng, np.random.Generator):
            rng = np.random.default_rng(rng)
        self._rng = rng
        self._counter = _counter if _counter is not None else [0]

    @property
    def count(self) -> int:
        return self._counter[0]

    def random(self, size=None):
        self._counter[0] += 1 if size is None else int(np.prod(size))
        return self._rng.random(size)

    def integers(self, low, high=None, size=None):
        self._counter[0] += 1 if size is None else int(np.prod(size))
        return self._rng.integers(low, high, size=size)

    def permutation(self, n: int):
        self._counter[0] += int(n)
        return self._rng.permutation(n)

    def spawn(self, k: int) -> list["CountingRNG"]:
        return [CountingRNG(child, self._counter) for child in self._rng.spawn(k)]


def _alias_table(weights: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Vose's construction; columns left over at the end are full (prob 1).
    k = weights.size
    scaled = weights * (k / weights.sum())
    prob = np.ones(k)
    alias = np.arange(k)
    small = [i for i in range(k) if scaled[i] < 1.0]
    large = [i for i in range(k) if scaled[i] >= 1.0]
    while small and large:
        s = small.pop()
        g = large.pop()
        prob[s] = scaled[s]
        alias[s] = g
        scaled[g] = (scaled[g] + scaled[s]) - 1.0
        (small if scaled[g] < 1.0 else large).append(g)
    return prob, alias


@dataclass(frozen=True, eq=False)
class PoolTable:
    """Pools of slots for one degree histogram.

    Pool ``i`` holds degree ``degrees[i]`` and owns slots
    ``[offsets[i], offsets[i] + sizes[i])``; pools are laid out in ascending
    degree order and tile ``[0, total_slots)``.
    """

    degrees: np.ndarray
    sizes: np.ndarray
    offsets: np.ndarray
    weights: np.ndarray
    blowup: int
    total_slots: int
    draw_count: int
    _prob: np.ndarray
    _alias: np.ndarray

    def pool_of(self, slots) -> np.ndarray:
        """Index of the pool each slot id belongs to."""
        return np.searchsorted(self.offsets, np.asarray(slots), side="right") - 1

    def weight_of(self, degree: int) -> float:
        i = np.searchsorted(self.degrees, degree)
        if i < self.degrees.size and self.degrees[i] == degree:
            return float(self.weights[i])
        return 0.0


def build_pools(hist: DegreeHistogram, b: int = 1) -> PoolTable:
    if int(b) != b or b < 1:
        raise DistributionError(f"blowup factor must be a positive integer, got {b!r}")
    b = int(b)
    counts = hist.counts
    degrees = np.flatnonzero(counts)
    degrees = degrees[degrees >= 1]
    if degrees.size == 0:
        raise DistributionError("no positive-degree nodes")
    n_d = counts[degrees]
    sizes = np.where(degrees == 1, b * n_d, n_d).astype(np.int64)
    offsets = np.concatenate([[0], np.cumsum(sizes)[:-1]]).astype(np.int64)
    mass = degrees * n_d
    m = int(mass.sum())
    weights = mass / m
    prob, alias = _alias_table(mass.astype(float))
    return PoolTable(
        degrees=degrees.astype(np.int64),
        sizes=sizes,
        offsets=offsets,
        weights=weights,
        blowup=b,
        total_slots=int(sizes.sum()),
        draw_count=m,
        _prob=prob,
        _alias=alias,
    )


def draw_endpoints(pt: PoolTable, rng, count: int) -> np.ndarray:
    """Draw ``count`` slot ids: a pool with probability ``w_d``, then a uniform slot.

    Uses two uniforms per draw; the pool comes from one alias-table lookup
    (column from the integer part, coin from the fractional part).
    """
    count = int(count)
    if count < 0:
        raise ValueError("count must be non-negative")
    k = pt.degrees.size
    u = rng.random(count) * k
    col = np.minimum(u.astype(np.int64), k - 1)
    pool = np.where(u - col < pt._prob[col], col, pt._alias[col])
    size = pt.sizes[pool]
    within = np.minimum((rng.random(count) * size).astype(np.int64), size - 1)
    return pt.offsets[pool] + within


@dataclass(frozen=True, eq=False)
class SelectionResult:
    labels: np.ndarray
    distinct_count: int
    label_space: int

    def __len__(self) -> int:
        return int(self.labels.size)


def relabel_many(slot_arrays, n: int, rng) -> list[SelectionResult]:
    """Relabel several slot sequences with one injective map.

    Slot ids in different sequences are treated as different slots, so no two
    distinct (sequence, slot) pairs share a label.  The label space is
    ``[0, n)`` unless more distinct slots were drawn than that, in which case it
    widens to the distinct count.
    """
    arrays = [np.asarray(a, dtype=np.int64) for a in slot_arrays]
    spans = [int(a.max()) + 1 if a.size else 0 for a in arrays]
    starts = np.concatenate([[0], np.cumsum(spans)]).astype(np.int64)
    seen = np.zeros(int(starts[-1]), dtype=bool)
    for a, s in zip(arrays, starts):
        seen[a + s] = True
    distinct = np.flatnonzero(seen)
    k = int(distinct.size)
    space = max(int(n), k)
    mapping = np.zeros(seen.size, dtype=np.int64)
    mapping[distinct] = rng.permutation(space)[:k] if k else []
    results = []
    for a, s, span in zip(arrays, starts, spans):
        distinct_here = int(np.count_nonzero(seen[s : s + span]))
        results.append(SelectionResult(mapping[a + s], distinct_here, space))
    return results


def relabel(slots, n: int, rng) -> SelectionResult:
    return relabel_many([slots], n, rng)[0]


def vertex_select(hist: DegreeHistogram, b: int, n: int | None, rng) -> SelectionResult:
    """Draw exactly ``sum(d * n_d)`` endpoint labels for ``hist``.

    A histogram with no positive degrees yields an empty selection.
    """
    n = hist.n if n is None else int(n)
    if hist.mass == 0:
        return SelectionResult(np.empty(0, dtype=np.int64), 0, n)
    pt = build_pools(hist, b)
    slots = draw_endpoints(pt, rng, pt.draw_count)
    return relabel(slots, n, rng)
