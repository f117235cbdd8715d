import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matchforest import DomainError, UsageError
from matchforest.graph_core import arcs_of, covered
from matchforest.optimum import (
    MixSize,
    admits_mec,
    build_reduction,
    dist_from_covered_edges,
    gallai,
    max_matching_forest,
    mec_to_mf,
    mf_to_mec_cover,
    min_cost_pmf,
    min_mixed_edge_cover,
    min_weight_mec,
)
from matchforest.oracle import enumerate_structures
from matchforest.structures import is_matching_forest, is_mixed_edge_cover, is_perfect_matching_forest

from helpers import graph, ids, mixed_graphs

TRIANGLE = graph(3, [(0, 1), (1, 2), (0, 2)])


class TestMixSize:
    def test_arithmetic(self):
        a = MixSize.of(ids("E0", "A0"))
        assert a == Fraction(3, 2) and a == 1.5 and str(a) == "1.5"
        assert a + a == 3 and a.doubled == 3
        assert MixSize.from_value(2) - a == Fraction(1, 2)
        assert a.to_json() == 1.5 and MixSize(4).to_json() == 2

    def test_ordering(self):
        assert MixSize(1) < MixSize(2) <= 1 < MixSize(3)

    def test_rejects_non_half_integers(self):
        with pytest.raises(ValueError):
            MixSize.from_value(Fraction(1, 3))


class TestDist:
    def test_edge_endpoint(self, chain):
        d = dist_from_covered_edges(chain)
        assert d[0] == d[1] == 0 and d[2] == 1

    def test_unreachable(self):
        d = dist_from_covered_edges(graph(3, [(0, 1)]))
        assert d[2] == math.inf
        assert not admits_mec(graph(3, [(0, 1)]))

    def test_no_edges(self):
        assert dist_from_covered_edges(graph(2, [], [(0, 1)]))[0] == math.inf


class TestGallai:
    def test_single_edge(self):
        g = graph(2, [(0, 1)])
        assert max_matching_forest(g)[0] == 1
        assert min_mixed_edge_cover(g)[0] == 1

    def test_chain(self, chain):
        nu, F = max_matching_forest(chain)
        assert nu == Fraction(3, 2) and F == chain.all_elements
        rho, H = min_mixed_edge_cover(chain)
        assert rho == Fraction(3, 2)
        assert mf_to_mec_cover(chain, F) == F

    def test_parallel_edges(self):
        assert max_matching_forest(graph(2, [(0, 1), (0, 1)]))[0] == 1

    def test_triangle(self):
        nu, F = max_matching_forest(TRIANGLE)
        assert nu == 1
        H = mf_to_mec_cover(TRIANGLE, ids("E0"))
        assert MixSize.of(H) == 2 and H == ids("E0", "E1")
        assert min_mixed_edge_cover(TRIANGLE)[0] == 2

    def test_perfect_forest_is_its_own_cover(self):
        g = graph(4, [(0, 1), (2, 3)])
        assert mf_to_mec_cover(g, g.all_edges) == g.all_edges

    def test_no_cover(self):
        with pytest.raises(DomainError):
            min_mixed_edge_cover(graph(3, [(0, 1)]))
        rep = gallai(graph(3, [(0, 1)]))
        assert rep.rho is None and not rep.identity_holds(graph(3, [(0, 1)]))

    def test_uncovered_vertex_without_edges(self):
        with pytest.raises(DomainError):
            mf_to_mec_cover(graph(3, [(0, 1)], [(0, 2)]), ids("E0"))

    def test_mec_to_mf_examples(self):
        g = graph(2, [(0, 1)])
        assert mec_to_mf(g, g.all_edges) == g.all_edges
        g = graph(3, [(0, 1), (1, 2)])
        F = mec_to_mf(g, g.all_edges)
        assert len(F) == 1 and MixSize.of(F) >= 3 - 2

    def test_mec_to_mf_requires_minimal(self):
        g = graph(2, [(0, 1), (0, 1)])
        with pytest.raises(DomainError):
            mec_to_mf(g, g.all_edges)

    @settings(max_examples=150, deadline=None)
    @given(mixed_graphs(max_vertices=6, max_elements=9))
    def test_identity_and_constructions(self, g):
        rep = gallai(g)
        forests = list(enumerate_structures(g, "mf"))
        assert rep.nu == max(MixSize.of(F) for F in forests)
        assert is_matching_forest(g, rep.max_forest)
        if not admits_mec(g):
            assert rep.rho is None
            return
        assert rep.rho == min(MixSize.of(F) for F in enumerate_structures(g, "mec"))
        assert rep.nu + rep.rho == g.num_vertices
        # the forest leaves only edge endpoints uncovered
        ends = covered(g, g.all_edges)
        assert set(g.vertices) - covered(g, rep.max_forest) <= ends
        assert MixSize.of(rep.built_cover) == g.num_vertices - rep.nu
        assert arcs_of(rep.min_cover) <= rep.built_forest
        assert MixSize.of(rep.built_forest) >= g.num_vertices - rep.rho


def _exhaustive_min_weight(g, w):
    return min(sum(w[e] for e in F) for F in enumerate_structures(g, "mec"))


class TestReduction:
    def test_single_edge(self):
        g = graph(2, [(0, 1)])
        red = build_reduction(g, {e: 3 for e in g.elements})
        assert red.graph.num_vertices == 4
        assert sorted(red.cost[e] for e in red.copy_edges.values()) == [3, 3]
        extra_arcs = [a for a in red.graph.all_arcs if a.index >= len(g.arcs)]
        assert len(extra_arcs) == 4 and all(red.cost[a] == 0 for a in extra_arcs)

    def test_vertex_without_edge(self, chain):
        red = build_reduction(chain, {e: 1 for e in chain.elements})
        assert sorted(red.copy_edges) == [0, 1]

    def test_zero_weights(self, chain):
        red = build_reduction(chain, {e: 0 for e in chain.elements})
        assert set(red.cost.values()) == {0}

    def test_weight_validation(self):
        g = graph(2, [(0, 1)])
        with pytest.raises(UsageError):
            build_reduction(g, {})
        with pytest.raises(UsageError):
            build_reduction(g, {e: -1 for e in g.elements})
        with pytest.raises(UsageError):
            build_reduction(g, {e: 1.5 for e in g.elements})

    def test_min_weight_examples(self):
        g = graph(2, [(0, 1)])
        assert min_weight_mec(g, {e: 5 for e in g.elements})[1] == 5
        assert min_weight_mec(TRIANGLE, {e: 1 for e in TRIANGLE.elements})[1] == 2
        g = graph(3, [(0, 1)], [(1, 2), (0, 2)])
        w = dict(zip(g.elements, (1, 4, 1)))
        F, weight = min_weight_mec(g, w)
        assert weight == 2 and F == ids("E0", "A1")

    def test_no_cover(self):
        g = graph(3, [(0, 1)])
        with pytest.raises(DomainError):
            min_weight_mec(g, {e: 1 for e in g.elements})

    def test_pmf_solver_none(self):
        assert min_cost_pmf(graph(3, [(0, 1)]), {ids("E0").__iter__().__next__(): 0}) is None

    @settings(max_examples=120, deadline=None)
    @given(mixed_graphs(max_vertices=6, max_elements=9), st.randoms(use_true_random=False))
    def test_matches_exhaustive(self, g, rnd):
        if not admits_mec(g):
            return
        w = {e: rnd.randint(0, 5) for e in g.elements}
        F, weight = min_weight_mec(g, w)
        assert is_mixed_edge_cover(g, F)
        assert weight == _exhaustive_min_weight(g, w)

    def test_pmf_solver_against_enumeration(self):
        rng = random.Random(5)
        for _ in range(60):
            g = graph(rng.randint(2, 5))
            n = g.num_vertices
            edges = [tuple(rng.sample(range(n), 2)) for _ in range(rng.randint(0, 4))]
            arcs = [tuple(rng.sample(range(n), 2)) for _ in range(rng.randint(0, 4))]
            g = graph(n, edges, arcs)
            cost = {e: rng.randint(0, 4) for e in g.elements}
            found = min_cost_pmf(g, cost)
            pmfs = [F for F in enumerate_structures(g, "pmf")]
            if not pmfs:
                assert found is None
                continue
            F, value = found
            assert is_perfect_matching_forest(g, F)
            assert value == min(sum(cost[e] for e in P) for P in pmfs)
