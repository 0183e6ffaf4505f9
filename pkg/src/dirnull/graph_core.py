"""Directed graph model, edge classification and degree statistics.

Degrees are split three ways.  For a node ``u``:

* ``rec``  - neighbours ``v`` with both ``(u, v)`` and ``(v, u)`` present
* ``in``   - in-edges whose reverse is absent
* ``out``  - out-edges whose reverse is absent

Total in-degree is ``in + rec`` and total out-degree is ``out + rec``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from dirnull.errors import GraphInputError

KINDS = ("in", "out", "rec", "total-in", "total-out")


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.setflags(write=False)
    return a


def _edge_keys(src: np.ndarray, dst: np.ndarray, n: int) -> np.ndarray:
    return src.astype(np.int64) * max(n, 1) + dst.astype(np.int64)


def _as_pairs(raw_edges) -> np.ndarray:
    if isinstance(raw_edges, np.ndarray):
        arr = raw_edges
    else:
        arr = np.asarray(list(raw_edges))
    if arr.size == 0:
        return np.empty((0, 2), dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise GraphInputError(f"edges must be ordered pairs, got array of shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        raise GraphInputError("node ids must be integers")
    return arr.astype(np.int64, copy=False)


def _check_range(pairs: np.ndarray, node_count: int) -> None:
    bad = np.flatnonzero((pairs < 0).any(axis=1) | (pairs >= node_count).any(axis=1))
    if bad.size:
        i = int(bad[0])
        u, v = (int(x) for x in pairs[i])
        raise GraphInputError(
            f"edge #{i} ({u}, {v}) has a node id outside [0, {node_count})"
        )


@dataclass(frozen=True, eq=False)
class DiGraph:
    """Simple directed graph: ``node_count`` nodes and a set of directed edges.

    Edges are held as two parallel int64 arrays in canonical (source, destination)
    order.  Construction rejects self-loops, duplicates and out-of-range ids;
    use :func:`simplify` for raw input.
    """

    node_count: int
    src: np.ndarray
    dst: np.ndarray

    def __post_init__(self):
        if self.node_count < 0:
            raise GraphInputError("node_count must be non-negative")
        src = np.asarray(self.src, dtype=np.int64).ravel()
        dst = np.asarray(self.dst, dtype=np.int64).ravel()
        if src.shape != dst.shape:
            raise GraphInputError("src and dst must have the same length")
        pairs = np.stack([src, dst], axis=1)
        _check_range(pairs, self.node_count)
        loops = np.flatnonzero(src == dst)
        if loops.size:
            raise GraphInputError(f"self-loop at node {int(src[loops[0]])}")
        keys = _edge_keys(src, dst, self.node_count)
        order = np.argsort(keys, kind="stable")
        keys = keys[order]
        if keys.size > 1 and (np.diff(keys) == 0).any():
            raise GraphInputError("duplicate directed edge")
        object.__setattr__(self, "src", _frozen(src[order]))
        object.__setattr__(self, "dst", _frozen(dst[order]))

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], node_count: int) -> "DiGraph":
        pairs = _as_pairs(edges)
        return cls(node_count, pairs[:, 0], pairs[:, 1])

    @property
    def m(self) -> int:
        return int(self.src.size)

    def __len__(self) -> int:
        return self.m

    def keys(self) -> np.ndarray:
        """Sorted int64 edge keys ``src * node_count + dst``."""
        return _edge_keys(self.src, self.dst, self.node_count)

    def edges(self) -> set[tuple[int, int]]:
        return set(zip(self.src.tolist(), self.dst.tolist()))

    def edge_array(self) -> np.ndarray:
        return np.stack([self.src, self.dst], axis=1)

    def __contains__(self, edge) -> bool:
        u, v = edge
        if not (0 <= u < self.node_count and 0 <= v < self.node_count):
            return False
        keys = self.keys()
        k = u * max(self.node_count, 1) + v
        i = np.searchsorted(keys, k)
        return bool(i < keys.size and keys[i] == k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiGraph):
            return NotImplemented
        return (
            self.node_count == other.node_count
            and np.array_equal(self.src, other.src)
            and np.array_equal(self.dst, other.dst)
        )

    def __repr__(self) -> str:
        return f"DiGraph(node_count={self.node_count}, m={self.m})"


def simplify(raw_edges, node_count: int) -> DiGraph:
    """Drop self-loops and duplicate directed edges from ``raw_edges``.

    Raises GraphInputError naming the first pair with an id outside
    ``[0, node_count)``.
    """
    pairs = _as_pairs(raw_edges)
    _check_range(pairs, node_count)
    pairs = pairs[pairs[:, 0] != pairs[:, 1]]
    keys = np.unique(_edge_keys(pairs[:, 0], pairs[:, 1], node_count))
    n = max(node_count, 1)
    return DiGraph(node_count, keys // n, keys % n)


class EdgeClasses(NamedTuple):
    reciprocal_pairs: np.ndarray  # (k, 2), u < v per row
    one_way: np.ndarray  # (j, 2)

    def reciprocal_set(self) -> set[frozenset]:
        return {frozenset(p) for p in self.reciprocal_pairs.tolist()}

    def one_way_set(self) -> set[tuple[int, int]]:
        return {tuple(p) for p in self.one_way.tolist()}


def reciprocated_mask(g: DiGraph) -> np.ndarray:
    """Boolean mask over ``g``'s edges: True where the reverse edge exists."""
    keys = g.keys()
    if keys.size == 0:
        return np.zeros(0, dtype=bool)
    rev = _edge_keys(g.dst, g.src, g.node_count)
    # sorted queries keep the binary searches cache-friendly on large graphs
    order = np.argsort(rev)
    rev_sorted = rev[order]
    idx = np.searchsorted(keys, rev_sorted)
    idx[idx == keys.size] = 0
    mask = np.empty(keys.size, dtype=bool)
    mask[order] = keys[idx] == rev_sorted
    return mask


def classify_edges(g: DiGraph) -> EdgeClasses:
    mask = reciprocated_mask(g)
    lower = mask & (g.src < g.dst)
    pairs = np.stack([g.src[lower], g.dst[lower]], axis=1)
    one_way = np.stack([g.src[~mask], g.dst[~mask]], axis=1)
    return EdgeClasses(pairs, one_way)


@dataclass(frozen=True, eq=False)
class DegreeRecords:
    """Per-node degree arrays (index = node id)."""

    rec: np.ndarray
    in_: np.ndarray
    out: np.ndarray

    @property
    def total_in(self) -> np.ndarray:
        return self.in_ + self.rec

    @property
    def total_out(self) -> np.ndarray:
        return self.out + self.rec

    def of_kind(self, kind: str) -> np.ndarray:
        return {
            "in": self.in_,
            "out": self.out,
            "rec": self.rec,
            "total-in": self.total_in,
            "total-out": self.total_out,
        }[kind]


def degree_records(g: DiGraph) -> DegreeRecords:
    mask = reciprocated_mask(g)
    n = g.node_count
    return DegreeRecords(
        rec=_frozen(np.bincount(g.src[mask], minlength=n)),
        in_=_frozen(np.bincount(g.dst[~mask], minlength=n)),
        out=_frozen(np.bincount(g.src[~mask], minlength=n)),
    )


@dataclass(frozen=True, eq=False)
class DegreeHistogram:
    """Node counts per degree: ``counts[d]`` is the number of nodes of degree ``d``.

    Trailing zero buckets are trimmed, so ``d_max == len(counts) - 1``.
    """

    kind: str
    counts: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown histogram kind {self.kind!r}; expected one of {KINDS}")
        counts = np.asarray(self.counts, dtype=np.int64).ravel()
        if (counts < 0).any():
            raise ValueError("histogram counts must be non-negative")
        nz = np.flatnonzero(counts)
        counts = counts[: nz[-1] + 1] if nz.size else counts[:1]
        if counts.size == 0:
            counts = np.zeros(1, dtype=np.int64)
        object.__setattr__(self, "counts", _frozen(counts))

    @classmethod
    def from_degrees(cls, kind: str, degrees) -> "DegreeHistogram":
        degrees = np.asarray(degrees, dtype=np.int64)
        return cls(kind, np.bincount(degrees) if degrees.size else np.zeros(1))

    @classmethod
    def from_mapping(cls, kind: str, mapping: Mapping[int, int]) -> "DegreeHistogram":
        if not mapping:
            return cls(kind, np.zeros(1))
        counts = np.zeros(max(mapping) + 1, dtype=np.int64)
        for d, c in mapping.items():
            if d < 0:
                raise ValueError(f"negative degree {d}")
            counts[d] += c
        return cls(kind, counts)

    @property
    def d_max(self) -> int:
        return int(self.counts.size - 1)

    @property
    def n(self) -> int:
        return int(self.counts.sum())

    @property
    def mass(self) -> int:
        """Sum of ``d * n_d``: the number of edge endpoints the histogram asks for."""
        return int(np.dot(np.arange(self.counts.size, dtype=np.int64), self.counts))

    def __getitem__(self, d: int) -> int:
        return int(self.counts[d]) if 0 <= d < self.counts.size else 0

    def as_dict(self) -> dict[int, int]:
        return {int(d): int(self.counts[d]) for d in np.flatnonzero(self.counts)}

    def with_kind(self, kind: str) -> "DegreeHistogram":
        return DegreeHistogram(kind, self.counts)

    def with_nodes(self, n: int) -> "DegreeHistogram":
        """Pad (or shrink) the degree-0 bucket so the histogram covers ``n`` nodes."""
        counts = self.counts.copy()
        counts[0] += n - self.n
        if counts[0] < 0:
            raise ValueError(f"histogram has {self.n - self[0]} positive-degree nodes, more than n={n}")
        return DegreeHistogram(self.kind, counts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DegreeHistogram):
            return NotImplemented
        return self.kind == other.kind and np.array_equal(self.counts, other.counts)

    def __repr__(self) -> str:
        return f"DegreeHistogram({self.kind!r}, n={self.n}, mass={self.mass}, d_max={self.d_max})"


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    m_rec: int
    r: float
    histograms: dict[str, DegreeHistogram]

    def __getitem__(self, kind: str) -> DegreeHistogram:
        return self.histograms[kind]


def compute_stats(g: DiGraph) -> GraphStats:
    """Node/edge counts, reciprocity and the five degree histograms of ``g``.

    Reciprocity is reciprocated directed edges over all directed edges, and 0
    for an edgeless graph.
    """
    recs = degree_records(g)
    hists = {k: DegreeHistogram.from_degrees(k, recs.of_kind(k)) for k in KINDS}
    if g.node_count == 0:
        hists = {k: DegreeHistogram(k, np.zeros(1)) for k in KINDS}
    m_rec = int(recs.rec.sum())
    r = m_rec / g.m if g.m else 0.0
    return GraphStats(n=g.node_count, m=g.m, m_rec=m_rec, r=r, histograms=hists)
