"""FD and FRD random directed graph generators.

``fd_generate`` pairs sources drawn by total out-degree with destinations drawn
by total in-degree, which reproduces the Chung-Lu edge probability
``d_out(i) * d_in(j) / m`` in expectation.  ``frd_generate`` first lays down
reciprocal pairs from the reciprocal-degree histogram (both directions
emitted), then adds one-way edges from the one-way in/out histograms.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from dirnull.errors import DistributionError
from dirnull.graph_core import DegreeHistogram, DiGraph
from dirnull.pool_sampler import (
    build_pools,
    draw_endpoints,
    relabel_many,
    vertex_select,
)

DEFAULT_BLOWUP = 10


@dataclass(frozen=True)
class GenerationConfig:
    b_rec: int = DEFAULT_BLOWUP
    b_in: int = DEFAULT_BLOWUP
    b_out: int = DEFAULT_BLOWUP
    seed: int | None = None
    n: int | None = None
    # Map both reciprocal halves through one injective relabeling so a node
    # never collects reciprocal degree from both halves.
    shared_reciprocal_labels: bool = True

    def __post_init__(self):
        for name in ("b_rec", "b_in", "b_out"):
            b = getattr(self, name)
            if int(b) != b or b < 1:
                raise DistributionError(f"{name} must be a positive integer, got {b!r}")

    def make_rng(self):
        return np.random.default_rng(self.seed)


@dataclass
class GenerationReport:
    model: str
    requested_edges: int
    emitted_edges: int = 0
    removed_self_loops: int = 0
    removed_duplicates: int = 0
    truncated_edges: int = 0
    node_count: int = 0
    elapsed: float = 0.0
    seed: int | None = None
    extra: dict = field(default_factory=dict)

    def check(self) -> None:
        lost = self.truncated_edges + self.removed_self_loops + self.removed_duplicates
        assert self.emitted_edges == self.requested_edges - lost, self


@dataclass(frozen=True)
class CleanupCounts:
    self_loops: int
    duplicates: int


def cleanup(edges, node_count: int | None = None) -> tuple[DiGraph, CleanupCounts]:
    """Remove self-loops and repeated edges from an edge multiset.

    ``edges`` is a ``(k, 2)`` array (or sequence of pairs).  Set semantics: only
    the first copy of a repeated edge survives, so which copy is dropped never
    matters for the result.
    """
    pairs = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if node_count is None:
        node_count = int(pairs.max()) + 1 if pairs.size else 0
    loops = pairs[:, 0] == pairs[:, 1]
    kept = pairs[~loops]
    n = max(node_count, 1)
    keys = np.unique(kept[:, 0] * n + kept[:, 1])
    g = DiGraph(node_count, keys // n, keys % n)
    return g, CleanupCounts(int(loops.sum()), int(kept.shape[0] - keys.size))


def _node_count(cfg: GenerationConfig, *hists: DegreeHistogram) -> int:
    ns = {h.n for h in hists}
    if len(ns) > 1:
        desc = ", ".join(f"{h.kind}: n={h.n}" for h in hists)
        raise DistributionError(f"histograms describe different node counts ({desc})")
    n = ns.pop()
    if cfg.n is not None:
        if cfg.n < max(h.n - h[0] for h in hists):
            raise DistributionError(f"n={cfg.n} is smaller than the number of positive-degree nodes")
        n = cfg.n
    return n


def halve_histogram(hist: DegreeHistogram) -> tuple[DegreeHistogram, DegreeHistogram]:
    """Split node counts into a source half and a destination half.

    For each degree the halves sum to ``n_d`` exactly; odd counts give the extra
    node to the source side and destination side alternately, by ascending
    degree.
    """
    counts = hist.counts
    src = counts // 2
    dst = counts // 2
    odd = np.flatnonzero(counts % 2)
    odd = odd[odd >= 1]
    src[odd[0::2]] += 1
    dst[odd[1::2]] += 1
    return DegreeHistogram(hist.kind, src), DegreeHistogram(hist.kind, dst)


def _draw_slots(hist: DegreeHistogram, b: int, rng) -> np.ndarray:
    if hist.mass == 0:
        return np.empty(0, dtype=np.int64)
    pt = build_pools(hist, b)
    return draw_endpoints(pt, rng, pt.draw_count)


def fd_generate(
    hist_t_in: DegreeHistogram,
    hist_t_out: DegreeHistogram,
    cfg: GenerationConfig | None = None,
    rng=None,
) -> tuple[DiGraph, GenerationReport]:
    """Fast Directed model: match total in- and out-degree distributions."""
    cfg = cfg or GenerationConfig()
    if hist_t_in.mass != hist_t_out.mass:
        raise DistributionError(
            f"in/out mass mismatch: sum d*n_d is {hist_t_in.mass} for in-degrees "
            f"and {hist_t_out.mass} for out-degrees"
        )
    n = _node_count(cfg, hist_t_in, hist_t_out)
    rng = cfg.make_rng() if rng is None else rng
    t0 = time.perf_counter()
    src_rng, dst_rng = rng.spawn(2)
    sources = vertex_select(hist_t_out, cfg.b_out, n, src_rng)
    dests = vertex_select(hist_t_in, cfg.b_in, n, dst_rng)
    node_count = max(n, sources.label_space, dests.label_space)
    g, removed = cleanup(np.stack([sources.labels, dests.labels], axis=1), node_count)
    report = GenerationReport(
        model="fd",
        requested_edges=hist_t_out.mass,
        emitted_edges=g.m,
        removed_self_loops=removed.self_loops,
        removed_duplicates=removed.duplicates,
        node_count=node_count,
        elapsed=time.perf_counter() - t0,
        seed=cfg.seed,
    )
    report.check()
    return g, report


def frd_generate(
    hist_rec: DegreeHistogram,
    hist_in: DegreeHistogram,
    hist_out: DegreeHistogram,
    cfg: GenerationConfig | None = None,
    rng=None,
) -> tuple[DiGraph, GenerationReport]:
    """Fast Reciprocal Directed model: match reciprocal, one-way in and one-way
    out degree distributions.

    Reciprocal pairs come from two selections over the halved reciprocal
    histogram, paired positionally; each pair contributes both directions.
    If the halves ask for different endpoint counts the longer selection is
    truncated.  One-way edges follow as in the FD model.
    """
    cfg = cfg or GenerationConfig()
    if hist_rec.mass % 2:
        raise DistributionError(f"reciprocal mass sum d*n_d = {hist_rec.mass} is odd")
    if hist_in.mass != hist_out.mass:
        raise DistributionError(
            f"one-way in/out mass mismatch: sum d*n_d is {hist_in.mass} for in-degrees "
            f"and {hist_out.mass} for out-degrees"
        )
    n = _node_count(cfg, hist_rec, hist_in, hist_out)
    rng = cfg.make_rng() if rng is None else rng
    t0 = time.perf_counter()
    rec_a_rng, rec_b_rng, rec_label_rng, out_rng, in_rng = rng.spawn(5)

    half_a, half_b = halve_histogram(hist_rec)
    if cfg.shared_reciprocal_labels:
        slots_a = _draw_slots(half_a, cfg.b_rec, rec_a_rng)
        slots_b = _draw_slots(half_b, cfg.b_rec, rec_b_rng)
        sel_a, sel_b = relabel_many([slots_a, slots_b], n, rec_label_rng)
    else:
        sel_a = vertex_select(half_a, cfg.b_rec, n, rec_a_rng)
        sel_b = vertex_select(half_b, cfg.b_rec, n, rec_b_rng)
    k = min(len(sel_a), len(sel_b))
    i, j = sel_a.labels[:k], sel_b.labels[:k]
    e1 = np.stack([np.concatenate([i, j]), np.concatenate([j, i])], axis=1)

    sources = vertex_select(hist_out, cfg.b_out, n, out_rng)
    dests = vertex_select(hist_in, cfg.b_in, n, in_rng)
    e2 = np.stack([sources.labels, dests.labels], axis=1)

    node_count = max(n, sel_a.label_space, sel_b.label_space, sources.label_space, dests.label_space)
    g, removed = cleanup(np.concatenate([e1, e2]), node_count)
    report = GenerationReport(
        model="frd",
        requested_edges=hist_rec.mass + hist_out.mass,
        emitted_edges=g.m,
        removed_self_loops=removed.self_loops,
        removed_duplicates=removed.duplicates,
        truncated_edges=hist_rec.mass - 2 * k,
        node_count=node_count,
        elapsed=time.perf_counter() - t0,
        seed=cfg.seed,
        extra={"reciprocal_pairs_drawn": k},
    )
    report.check()
    return g, report
