import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matchforest import GraphValidationError, MixedGraph, UsageError
from matchforest.graph_core import (
    ElementId,
    arcs_of,
    cover_counts,
    covered,
    edges_of,
    heads,
    reachable_from,
    source_components,
    strong_components,
    underlying_has_cycle,
)

from helpers import graph, graph_and_subset, ids, mixed_graphs


class TestConstruction:
    def test_loops_rejected(self):
        with pytest.raises(GraphValidationError):
            MixedGraph(2, ((1, 1),))
        with pytest.raises(GraphValidationError):
            MixedGraph(2, (), ((0, 0),))

    def test_out_of_range(self):
        with pytest.raises(GraphValidationError):
            MixedGraph(2, ((0, 2),))

    def test_size_caps(self):
        with pytest.raises(GraphValidationError):
            MixedGraph(65)
        with pytest.raises(GraphValidationError):
            MixedGraph(2, ((0, 1),) * 257)
        MixedGraph(3, max_vertices=3)

    def test_parallel_elements_distinct(self):
        g = graph(2, [(0, 1), (0, 1)], [(0, 1)])
        assert len(g.all_elements) == 3
        assert g.elements == (ElementId.edge(0), ElementId.edge(1), ElementId.arc(0))

    def test_equality_and_hash(self):
        assert graph(2, [(0, 1)]) == graph(2, [(0, 1)])
        assert hash(graph(2, [(0, 1)])) == hash(graph(2, [(0, 1)]))
        assert graph(2, [(0, 1)]) != graph(2, [], [(0, 1)])

    def test_invalid_element(self):
        g = graph(2, [(0, 1)])
        with pytest.raises(UsageError):
            g.check_element(ElementId.arc(0))
        with pytest.raises(UsageError):
            g.check_element(("X", 0))

    def test_mask_round_trip(self):
        g = graph(3, [(0, 1), (1, 2)], [(2, 0)])
        for mask in range(1 << g.num_elements):
            assert g.mask(g.from_mask(mask)) == mask

    def test_element_sets(self):
        F = ids("E0", "A1", "A0")
        assert edges_of(F) == ids("E0")
        assert arcs_of(F) == ids("A0", "A1")


class TestHeads:
    def test_edge_heads(self):
        assert heads(graph(2, [(0, 1)]), ElementId.edge(0)) == {0, 1}

    def test_arc_heads(self):
        assert heads(graph(2, [], [(0, 1)]), ElementId.arc(0)) == {1}
        assert heads(graph(3, [], [(2, 0)]), ElementId.arc(0)) == {0}

    def test_invalid(self):
        with pytest.raises(UsageError):
            heads(graph(2, [(0, 1)]), ElementId.edge(3))


class TestCovered:
    def test_empty(self):
        assert covered(graph(2, [(0, 1)]), ()) == frozenset()

    def test_single_edge(self):
        assert covered(graph(2, [(0, 1)]), ids("E0")) == {0, 1}

    def test_chain(self, chain):
        assert covered(chain, chain.all_elements) == {0, 1, 2}

    def test_counts(self):
        assert set(cover_counts(graph(2, [(0, 1)]), ()).values()) == {0}
        assert cover_counts(graph(2, [(0, 1), (0, 1)]), ids("E0", "E1")) == {0: 2, 1: 2}
        assert cover_counts(graph(2, [(0, 1)], [(0, 1)]), ids("E0", "A0")) == {0: 1, 1: 2}

    @given(graph_and_subset(), st.data())
    def test_union_property(self, gs, data):
        g, F1 = gs
        F2 = g.from_mask(data.draw(st.integers(0, (1 << g.num_elements) - 1)))
        assert covered(g, F1 | F2) == covered(g, F1) | covered(g, F2)

    @given(graph_and_subset())
    def test_count_total(self, gs):
        g, F = gs
        assert sum(cover_counts(g, F).values()) == 2 * len(edges_of(F)) + len(arcs_of(F))


class TestCycles:
    def test_empty(self):
        assert not underlying_has_cycle(graph(2, [(0, 1)]), ())

    def test_parallel_pair(self):
        g = graph(2, [(0, 1)], [(1, 0)])
        assert underlying_has_cycle(g, g.all_elements)

    def test_triangle(self):
        g = graph(3, [(0, 1)], [(1, 2), (2, 0)])
        assert underlying_has_cycle(g, g.all_elements)
        assert not underlying_has_cycle(g, ids("E0", "A0"))

    @given(graph_and_subset())
    def test_forest_size_bound(self, gs):
        g, F = gs
        if not underlying_has_cycle(g, F):
            # count underlying components by hand
            parent = list(g.vertices)

            def find(x):
                while parent[x] != x:
                    x = parent[x]
                return x

            for e in F:
                u, v = g.endpoints(e)
                parent[find(u)] = find(v)
            comps = len({find(v) for v in g.vertices})
            assert len(F) <= g.num_vertices - comps


class TestReachability:
    def test_length_zero(self):
        assert reachable_from(graph(3, [], [(1, 2)]), (), {0}) == {0}

    def test_chain(self):
        g = graph(3, [], [(0, 1), (1, 2)])
        assert reachable_from(g, g.all_arcs, {0}) == {0, 1, 2}

    def test_unreachable_arc(self):
        g = graph(3, [], [(0, 1)])
        assert reachable_from(g, g.all_arcs, {2}) == {2}

    def test_edge_rejected(self):
        g = graph(2, [(0, 1)])
        with pytest.raises(UsageError):
            reachable_from(g, g.all_edges, {0})

    @given(mixed_graphs(), st.data())
    def test_monotone(self, g, data):
        arcs = sorted(g.all_arcs)
        B = frozenset(data.draw(st.lists(st.sampled_from(arcs), unique=True))) if arcs else frozenset()
        Bx = B | frozenset(data.draw(st.lists(st.sampled_from(arcs), unique=True))) if arcs else B
        S = frozenset(data.draw(st.lists(st.sampled_from(list(g.vertices)), unique=True)))
        Sx = S | frozenset(data.draw(st.lists(st.sampled_from(list(g.vertices)), unique=True)))
        assert reachable_from(g, B, S) <= reachable_from(g, Bx, Sx)


class TestSourceComponents:
    def test_isolated(self):
        assert source_components(graph(3), ()) == [{0}, {1}, {2}]

    def test_two_cycle(self):
        g = graph(2, [], [(0, 1), (1, 0)])
        assert source_components(g, g.all_arcs) == [{0, 1}]

    def test_entered_cycle(self):
        g = graph(3, [], [(0, 1), (1, 2), (2, 1)])
        assert source_components(g, g.all_arcs) == [{0}]

    def test_edge_rejected(self):
        g = graph(2, [(0, 1)])
        with pytest.raises(UsageError):
            source_components(g, g.all_edges)

    def test_tarjan_partitions_vertices(self):
        comps = strong_components(5, [(0, 1), (1, 0), (1, 2), (3, 4), (4, 3), (2, 3)])
        assert sorted(map(tuple, comps)) == [(0, 1), (2,), (3, 4)]

    @settings(max_examples=150)
    @given(mixed_graphs(max_vertices=6, max_elements=9))
    def test_no_entering_arc_and_scc(self, g):
        D = g.all_arcs
        comps = source_components(g, D)
        seen = set()
        for c in comps:
            assert not seen & c
            seen |= c
            for t, h in g.arcs:
                assert not (h in c and t not in c)
        # agree with a closure-based strong component computation
        reach = {v: reachable_from(g, D, {v}) for v in g.vertices}
        scc = {v: frozenset(u for u in g.vertices if u in reach[v] and v in reach[u]) for v in g.vertices}
        expected = {s for s in scc.values() if not any(t not in s and h in s for t, h in g.arcs)}
        assert set(comps) == expected
