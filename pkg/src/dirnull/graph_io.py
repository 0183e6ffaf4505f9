"""Edge-list reading/writing, log binning and the stats text format.

Edge lists follow the SNAP convention: ``#`` comment lines, then one
``source<whitespace>destination`` pair of non-negative integers per line.

Stats documents (``# dirnull-stats 1``) are tab-separated::

    # dirnull-stats 1
    n	<nodes>
    m	<edges>
    m_rec	<reciprocated directed edges>
    r	<reciprocity>
    [report]                  (generated graphs only)
    model	frd
    ...
    [distribution in]
    degree	count
    0	12
    1	40
    [logbin in]
    degree0	12
    lo	hi	count
    1	2	40

with one ``distribution``/``logbin`` section pair per degree kind.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass
from typing import NamedTuple, TextIO

import numpy as np

from dirnull.errors import GraphInputError
from dirnull.graph_core import KINDS, DegreeHistogram, DiGraph, GraphStats, simplify

STATS_HEADER = "# dirnull-stats 1"
_NODES_RE = re.compile(r"Nodes:\s*(\d+)")


class EdgeList(NamedTuple):
    pairs: np.ndarray  # (k, 2) internal ids
    id_map: dict[int, int]  # external id -> internal id
    declared_nodes: int | None  # from a "# Nodes: N" header, if any

    @property
    def node_count(self) -> int:
        return max(len(self.id_map), self.declared_nodes or 0)


def read_edge_list(stream: TextIO) -> EdgeList:
    """Parse an edge list, mapping external ids to ``0..k-1`` by first appearance."""
    flat = []
    declared = None
    for lineno, line in enumerate(stream, start=1):
        s = line.strip()
        if not s:
            continue
        if s[0] == "#":
            match = _NODES_RE.search(s)
            if match and declared is None:
                declared = int(match.group(1))
            continue
        tokens = s.split()
        if len(tokens) != 2:
            raise GraphInputError(f"expected 2 tokens, got {len(tokens)}: {s!r}", line=lineno)
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphInputError(f"node ids must be integers: {s!r}", line=lineno) from None
        if u < 0 or v < 0:
            raise GraphInputError(f"negative node id: {s!r}", line=lineno)
        flat.append(u)
        flat.append(v)
    if not flat:
        return EdgeList(np.empty((0, 2), dtype=np.int64), {}, declared)
    ext = np.asarray(flat, dtype=np.int64)
    uniq, first, inverse = np.unique(ext, return_index=True, return_inverse=True)
    order = np.argsort(first, kind="stable")
    rank = np.empty_like(order)
    rank[order] = np.arange(order.size)
    internal = rank[inverse].reshape(-1, 2)
    id_map = dict(zip(uniq[order].tolist(), range(order.size)))
    return EdgeList(internal, id_map, declared)


def load_graph(path) -> tuple[DiGraph, dict[int, int]]:
    """Read and simplify an edge-list file; parse errors carry ``path:line``."""
    try:
        with open(path) as fh:
            el = read_edge_list(fh)
    except GraphInputError as exc:
        raise GraphInputError(f"{path}: {exc}") from None
    return simplify(el.pairs, el.node_count), el.id_map


def write_edge_list(
    g: DiGraph, stream: TextIO | None = None, id_map: dict[int, int] | None = None,
    header: str | None = None,
) -> TextIO:
    """Write one ``u<TAB>v`` line per edge in sorted order after a single
    ``#`` header line.  With ``id_map`` (external -> internal) the original ids
    are written back.
    """
    stream = io.StringIO() if stream is None else stream
    line = f"# Nodes: {g.node_count} Edges: {g.m}"
    if header:
        line += f" {header}"
    stream.write(line + "\n")
    src, dst = g.src, g.dst
    if id_map is not None:
        back = np.zeros(g.node_count, dtype=np.int64)
        for ext, internal in id_map.items():
            if internal < g.node_count:
                back[internal] = ext
        src, dst = back[src], back[dst]
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
    if g.m:
        body = np.char.add(np.char.add(src.astype(str), "\t"), dst.astype(str))
        stream.write("\n".join(body.tolist()))
        stream.write("\n")
    return stream


@dataclass(frozen=True)
class LogBinnedDistribution:
    """Counts summed over bins ``[1,2), [2,4), [4,8), ...``; degree 0 kept apart."""

    kind: str
    bins: list[tuple[int, int, int]]
    zero_count: int

    @property
    def total(self) -> int:
        return sum(c for _, _, c in self.bins)

    def as_dict(self) -> dict[int, int]:
        return {lo: c for lo, _, c in self.bins}


def log_bin(hist: DegreeHistogram) -> LogBinnedDistribution:
    counts = hist.counts
    bins = []
    lo = 1
    while lo < counts.size:
        hi = 2 * lo
        bins.append((lo, hi, int(counts[lo:hi].sum())))
        lo = hi
    return LogBinnedDistribution(hist.kind, bins, hist[0])


def _fmt_float(x: float) -> str:
    return format(x, ".12g")


def export_stats(stats: GraphStats, report=None, stream: TextIO | None = None) -> TextIO:
    stream = io.StringIO() if stream is None else stream
    w = stream.write
    w(STATS_HEADER + "\n")
    w(f"n\t{stats.n}\nm\t{stats.m}\nm_rec\t{stats.m_rec}\nr\t{_fmt_float(stats.r)}\n")
    if report is not None:
        w("[report]\n")
        w(f"model\t{report.model}\n")
        w(f"seed\t{'' if report.seed is None else report.seed}\n")
        w(f"requested_edges\t{report.requested_edges}\n")
        w(f"emitted_edges\t{report.emitted_edges}\n")
        w(f"truncated_edges\t{report.truncated_edges}\n")
        w(f"removed_self_loops\t{report.removed_self_loops}\n")
        w(f"removed_duplicates\t{report.removed_duplicates}\n")
        w(f"elapsed\t{report.elapsed:.6f}\n")
    for kind in KINDS:
        hist = stats.histograms[kind]
        w(f"[distribution {kind}]\ndegree\tcount\n")
        for d, c in hist.as_dict().items():
            w(f"{d}\t{c}\n")
        lb = log_bin(hist)
        w(f"[logbin {kind}]\ndegree0\t{lb.zero_count}\nlo\thi\tcount\n")
        for lo, hi, c in lb.bins:
            w(f"{lo}\t{hi}\t{c}\n")
    return stream


@dataclass
class StatsDocument:
    fields: dict[str, str]
    report: dict[str, str]
    histograms: dict[str, DegreeHistogram]

    def __getitem__(self, key: str) -> str:
        return self.fields[key]


def read_stats(stream: TextIO) -> StatsDocument:
    """Parse a stats document; only the raw distributions are read back, the
    log-binned tables are derived data."""
    first = stream.readline().rstrip("\n")
    if first.strip() != STATS_HEADER:
        raise GraphInputError(f"not a stats document (header {first!r})", line=1)
    fields: dict[str, str] = {}
    report: dict[str, str] = {}
    raw: dict[str, dict[int, int]] = {}
    section = None
    for lineno, line in enumerate(stream, start=2):
        s = line.rstrip("\n")
        if not s.strip():
            continue
        if s.startswith("["):
            name = s.strip("[]").split()
            if name[0] == "distribution":
                if len(name) != 2 or name[1] not in KINDS:
                    raise GraphInputError(f"bad section {s!r}", line=lineno)
                raw[name[1]] = {}
            section = tuple(name)
            continue
        parts = s.split("\t")
        if section is None:
            fields[parts[0]] = parts[1] if len(parts) > 1 else ""
        elif section[0] == "report":
            report[parts[0]] = parts[1] if len(parts) > 1 else ""
        elif section[0] == "distribution":
            if parts[0] == "degree":
                continue
            try:
                d, c = int(parts[0]), int(parts[1])
            except (ValueError, IndexError):
                raise GraphInputError(f"bad distribution row {s!r}", line=lineno) from None
            if d < 0 or c < 0:
                raise GraphInputError(f"negative value in {s!r}", line=lineno)
            raw[section[1]][d] = c
    hists = {k: DegreeHistogram.from_mapping(k, v) for k, v in raw.items()}
    return StatsDocument(fields, report, hists)
