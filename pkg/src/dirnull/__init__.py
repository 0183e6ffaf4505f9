"""Directed null-model graph generation matching in-, out- and reciprocal-degree
distributions.

The two generators are ``fd_generate`` (total in/out degrees only) and
``frd_generate`` (one-way in/out degrees plus reciprocal degree).
"""

from dirnull.errors import DistributionError, GraphInputError
from dirnull.graph_core import (
    KINDS,
    DegreeHistogram,
    DegreeRecords,
    DiGraph,
    EdgeClasses,
    GraphStats,
    classify_edges,
    compute_stats,
    degree_records,
    simplify,
)
from dirnull.pool_sampler import (
    CountingRNG,
    PoolTable,
    SelectionResult,
    build_pools,
    draw_endpoints,
    relabel,
    vertex_select,
)
from dirnull.generators import (
    GenerationConfig,
    GenerationReport,
    cleanup,
    fd_generate,
    frd_generate,
    halve_histogram,
)
from dirnull.expectation import (
    RealizedDegreeExpectation,
    blowup_realization_pmf,
    expected_realized_counts,
    poisson_realization_pmf,
)
from dirnull.graph_io import (
    LogBinnedDistribution,
    export_stats,
    log_bin,
    read_edge_list,
    read_stats,
    write_edge_list,
)

__version__ = "0.1.0"
