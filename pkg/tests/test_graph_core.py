import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirnull import (
    KINDS,
    DegreeHistogram,
    DiGraph,
    GraphInputError,
    classify_edges,
    compute_stats,
    degree_records,
    simplify,
)
from oracles import classify_oracle, dedup_oracle, stats_oracle


@st.composite
def raw_graphs(draw, max_n=12):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = draw(
        st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=60)
    )
    return n, pairs


def random_simple(rng, n, m):
    """Uniform simple digraph with exactly ``m`` edges."""
    keys = rng.choice(n * (n - 1), size=m, replace=False)
    u, r = keys // (n - 1), keys % (n - 1)
    v = np.where(r >= u, r + 1, r)
    return DiGraph(n, u, v)


class TestSimplify:
    def test_drops_duplicates_and_self_loops(self):
        g = simplify([(0, 1), (0, 1), (1, 1), (1, 0)], 2)
        assert g.edges() == {(0, 1), (1, 0)}
        assert g.node_count == 2

    def test_empty(self):
        g = simplify([], 5)
        assert g.m == 0
        assert g.node_count == 5

    def test_matches_set_oracle(self, rng):
        pairs = rng.integers(0, 50, size=(1000, 2))
        g = simplify(pairs, 50)
        assert g.edges() == dedup_oracle(pairs.tolist())

    def test_out_of_range_names_pair(self):
        with pytest.raises(GraphInputError, match=r"#2 \(3, 7\)"):
            simplify([(0, 1), (1, 2), (3, 7)], 5)

    def test_negative_id(self):
        with pytest.raises(GraphInputError):
            simplify([(-1, 0)], 5)


class TestDiGraph:
    def test_rejects_self_loop(self):
        with pytest.raises(GraphInputError, match="self-loop"):
            DiGraph.from_edges([(1, 1)], 3)

    def test_rejects_duplicate(self):
        with pytest.raises(GraphInputError, match="duplicate"):
            DiGraph.from_edges([(0, 1), (0, 1)], 3)

    def test_rejects_out_of_range(self):
        with pytest.raises(GraphInputError):
            DiGraph.from_edges([(0, 3)], 3)

    def test_immutable_arrays(self):
        g = DiGraph.from_edges([(0, 1)], 2)
        with pytest.raises(ValueError):
            g.src[0] = 1

    def test_contains(self):
        g = DiGraph.from_edges([(2, 0), (0, 1)], 3)
        assert (2, 0) in g and (0, 1) in g
        assert (1, 0) not in g and (5, 0) not in g


class TestClassify:
    def test_reciprocal_pair(self):
        c = classify_edges(DiGraph.from_edges([(1, 2), (2, 1)], 3))
        assert c.reciprocal_set() == {frozenset((1, 2))}
        assert c.one_way_set() == set()

    def test_one_way(self):
        c = classify_edges(DiGraph.from_edges([(1, 2)], 3))
        assert c.reciprocal_set() == set()
        assert c.one_way_set() == {(1, 2)}

    def test_matches_all_pairs_oracle(self, rng):
        # dense enough that reciprocal pairs show up
        g = random_simple(rng, 25, 200)
        recip, one_way = classify_oracle(g.edges(), 25)
        c = classify_edges(g)
        assert c.reciprocal_set() == recip
        assert c.one_way_set() == one_way
        assert len(recip) > 0


class TestStats:
    def test_node_with_mixed_degrees(self):
        # node 1: reciprocal with 2 and 3, one-way in-edges from 0 and 4
        g = DiGraph.from_edges([(1, 2), (2, 1), (1, 3), (3, 1), (0, 1), (4, 1)], 5)
        rec = degree_records(g)
        assert (rec.rec[1], rec.in_[1], rec.out[1]) == (2, 2, 0)
        assert rec.total_in[1] == 4
        assert rec.total_out[1] == 2

    def test_fully_reciprocated(self):
        s = compute_stats(DiGraph.from_edges([(1, 2), (2, 1)], 3))
        assert (s.n, s.m, s.m_rec, s.r) == (3, 2, 2, 1.0)

    def test_empty_graph_reciprocity_zero(self):
        s = compute_stats(DiGraph.from_edges([], 4))
        assert s.r == 0.0
        assert all(s[k].n == 4 for k in KINDS)

    def test_r_matches_classifier(self, rng):
        g = random_simple(rng, 40, 500)
        c = classify_edges(g)
        s = compute_stats(g)
        assert s.m == 500
        assert s.r == pytest.approx(2 * len(c.reciprocal_pairs) / 500, abs=0)

    def test_matches_definition_oracle(self, rng):
        g = random_simple(rng, 20, 120)
        expected = stats_oracle(g.edges(), 20)
        s = compute_stats(g)
        assert (s.n, s.m, s.m_rec) == (expected["n"], expected["m"], expected["m_rec"])
        for k in KINDS:
            assert s[k].as_dict() == expected["hists"][k]


@settings(max_examples=200, deadline=None)
@given(raw_graphs())
def test_stats_invariants(ng):
    n, pairs = ng
    g = simplify(pairs, n)
    s = compute_stats(g)
    c = classify_edges(g)
    assert s["total-in"].mass == s["total-out"].mass == s.m
    assert s["in"].mass + s["rec"].mass == s.m == s["out"].mass + s["rec"].mass
    assert s["rec"].mass == 2 * len(c.reciprocal_pairs) == s.m_rec
    assert s.m_rec % 2 == 0
    assert 0.0 <= s.r <= 1.0
    if s.m:
        assert (s.r == 1.0) == (len(c.one_way) == 0)
        assert (s.r == 0.0) == (len(c.reciprocal_pairs) == 0)
    for k in KINDS:
        assert s[k].n == n


@settings(max_examples=200, deadline=None)
@given(raw_graphs())
def test_classify_reassembles_graph(ng):
    n, pairs = ng
    g = simplify(pairs, n)
    c = classify_edges(g)
    rebuilt = set(map(tuple, c.one_way.tolist()))
    for u, v in c.reciprocal_pairs.tolist():
        rebuilt.add((u, v))
        rebuilt.add((v, u))
    assert rebuilt == g.edges()
    assert len(c.one_way) + 2 * len(c.reciprocal_pairs) == g.m


class TestHistogram:
    def test_trims_trailing_zeros(self):
        h = DegreeHistogram("in", [3, 0, 2, 0, 0])
        assert h.d_max == 2
        assert h.n == 5
        assert h.mass == 4

    def test_from_mapping_roundtrip(self):
        h = DegreeHistogram.from_mapping("rec", {0: 4, 3: 2})
        assert h.as_dict() == {0: 4, 3: 2}
        assert h[3] == 2 and h[10] == 0

    def test_rejects_negative_and_bad_kind(self):
        with pytest.raises(ValueError):
            DegreeHistogram("in", [1, -1])
        with pytest.raises(ValueError):
            DegreeHistogram("sideways", [1])

    def test_with_nodes(self):
        h = DegreeHistogram("out", [0, 5]).with_nodes(8)
        assert h.as_dict() == {0: 3, 1: 5}
        with pytest.raises(ValueError):
            h.with_nodes(4)
