from fractions import Fraction

import pytest
from hypothesis import given, settings

from matchforest import UsageError
from matchforest.graph_core import ElementId
from matchforest.oracle import all_small_graphs, enumerate_structures
from matchforest.polytope import (
    Subpartition,
    crossing_elements,
    enumerate_subpartitions,
    head_elements,
    inside_elements,
    integer_points,
    mec_system_check,
    mf_system_check,
    pmf_system_check,
    verify_integer_hull,
)

from helpers import graph, mixed_graphs


def indicator(g, F):
    return [1 if e in F else 0 for e in g.elements]


BELL = [1, 1, 2, 5, 15, 52, 203]


class TestSubpartitions:
    def test_one_vertex(self):
        subs = list(enumerate_subpartitions(1))
        assert [s.classes for s in subs] == [(), (frozenset({0}),)]

    def test_two_vertices(self):
        subs = {s.classes for s in enumerate_subpartitions(2)}
        assert len(subs) == 5
        assert (frozenset({0, 1}),) in subs and (frozenset({0}), frozenset({1})) in subs

    @pytest.mark.parametrize("n", range(0, 6))
    def test_counts(self, n):
        subs = list(enumerate_subpartitions(n))
        assert len(subs) == BELL[n + 1] == len(set(s.classes for s in subs))
        for s in subs:
            assert all(s.classes) and sum(len(z) for z in s.classes) == len(s.union)

    def test_cap(self):
        with pytest.raises(UsageError):
            list(enumerate_subpartitions(6))

    def test_half_up(self):
        s = Subpartition((frozenset({0}), frozenset({1}), frozenset({2})))
        assert s.half_up == 2 and len(s) == 3


class TestExtractors:
    def test_examples(self):
        g = graph(3, [(0, 1)], [(1, 2), (2, 0)])
        assert head_elements(g, 0) == {ElementId.edge(0), ElementId.arc(1)}
        S = Subpartition((frozenset({0, 1}), frozenset({2})))
        assert inside_elements(g, S) == {ElementId.edge(0)}
        assert crossing_elements(g, S) == {ElementId.edge(0), ElementId.arc(0), ElementId.arc(1)}


class TestSystems:
    def test_zero_vector(self):
        g = graph(2, [(0, 1)])
        assert mf_system_check(g, [0])
        res = pmf_system_check(g, [0])
        assert not res and res.violation.constraint == "head == 1"
        res = mec_system_check(g, [0])
        assert not res and res.violation.constraint == "subpartition >="
        assert res.violation.rhs == 1

    def test_double_cover(self):
        g = graph(2, [(0, 1), (0, 1)])
        res = mf_system_check(g, [1, 1])
        assert not res and res.violation.constraint == "head <= 1"

    def test_two_cycle(self):
        g = graph(2, [], [(0, 1), (1, 0)])
        res = mf_system_check(g, [1, 1])
        assert not res
        assert res.violation.constraint == "subpartition <=" and (res.violation.lhs, res.violation.rhs) == (2, 1)

    def test_half_vector(self):
        g = graph(2, [(0, 1), (0, 1)])
        half = [Fraction(1, 2)] * 2
        assert pmf_system_check(g, half)

    def test_entry_two(self):
        g = graph(2, [(0, 1)])
        res = mec_system_check(g, [2])
        assert not res and res.violation.constraint == "upper bound"

    def test_pmf_indicator(self, chain):
        assert pmf_system_check(chain, [1, 1])

    def test_dict_vectors(self, chain):
        assert mf_system_check(chain, {ElementId.edge(0): 1})
        with pytest.raises(UsageError):
            mf_system_check(chain, [1])

    @settings(max_examples=80, deadline=None)
    @given(mixed_graphs(max_vertices=5, max_elements=7))
    def test_soundness(self, g):
        checks = {"mf": mf_system_check, "pmf": pmf_system_check, "mec": mec_system_check}
        for kind, check in checks.items():
            for F in enumerate_structures(g, kind):
                assert check(g, indicator(g, F)), (kind, F)

    @settings(max_examples=60, deadline=None)
    @given(mixed_graphs(max_vertices=4, max_elements=6))
    def test_pmf_from_mf_plus_equalities(self, g):
        # for perfect x, the two subpartition constraints agree term by term
        for F in enumerate_structures(g, "pmf"):
            for S in enumerate_subpartitions(g):
                if not len(S):
                    continue
                inside = len(F & inside_elements(g, S))
                crossing = len(F & crossing_elements(g, S))
                assert (inside <= len(S.union) - S.half_up) == (crossing >= S.half_up)


class TestHull:
    def test_empty_graph(self):
        for kind in ("mf", "pmf", "mec"):
            assert verify_integer_hull(graph(0), kind)

    def test_single_edge(self):
        g = graph(2, [(0, 1)])
        assert integer_points(g, "mf") == {0, 1}
        assert verify_integer_hull(g, "mf")

    def test_caps(self):
        with pytest.raises(UsageError):
            verify_integer_hull(graph(6), "mf")
        with pytest.raises(UsageError):
            verify_integer_hull(graph(2, [(0, 1)] * 11), "mf")
        with pytest.raises(UsageError):
            verify_integer_hull(graph(2, [(0, 1)]), "matching")

    def test_small_graphs(self):
        for g in all_small_graphs(3, 4):
            for kind in ("mf", "pmf", "mec"):
                assert verify_integer_hull(g, kind), (g, kind)
