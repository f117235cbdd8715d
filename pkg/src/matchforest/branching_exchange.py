"""Repartition the union of two branchings so that they get prescribed root sets.

Two disjoint branchings ``B1``, ``B2`` can be rearranged into branchings with
root sets ``R1p``, ``R2p`` (where ``R1p | R2p`` and ``R1p & R2p`` match the old
union and intersection of root sets) exactly when every source component of
``B1 | B2`` meets both targets.

The construction here is an exhaustive search that is exact at desk scale.
Every vertex must end up with ``2 - [v in R1p] - [v in R2p]`` entering arcs,
which equals its in-degree in ``B1 | B2``. So a vertex with one entering arc
has its arc forced to one side, and only vertices with two entering arcs
branch the search (2 ways each); acyclicity prunes.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, InfeasibleExchange, UsageError
from .graph_core import MixedGraph, source_components
from .structures import is_branching, root_set


@dataclass(frozen=True)
class RootExchangeRequest:
    B1: frozenset
    B2: frozenset
    R1p: frozenset
    R2p: frozenset


def _normalize(g: MixedGraph, req: RootExchangeRequest):
    B1, B2 = g.check_set(req.B1), g.check_set(req.B2)
    for e in B1 | B2:
        if not e.is_arc:
            raise UsageError(f"branchings contain only arcs; got {e!r}")
    if B1 & B2:
        raise DomainError("B1 and B2 must be disjoint")
    if not is_branching(g, B1) or not is_branching(g, B2):
        raise DomainError("B1 and B2 must be branchings")
    R1p, R2p = frozenset(req.R1p), frozenset(req.R2p)
    if any(not 0 <= v < g.num_vertices for v in R1p | R2p):
        raise UsageError("target root sets contain out-of-range vertices")
    R1, R2 = root_set(g, B1), root_set(g, B2)
    if R1p | R2p != R1 | R2 or R1p & R2p != R1 & R2:
        raise DomainError("targets must keep the union and intersection of the root sets")
    return B1, B2, R1p, R2p


def _missing_component(g, B1, B2, R1p, R2p):
    for comp in source_components(g, B1 | B2):
        if not (comp & R1p) or not (comp & R2p):
            return comp
    return None


def exchange_feasible(g: MixedGraph, req: RootExchangeRequest) -> bool:
    B1, B2, R1p, R2p = _normalize(g, req)
    return _missing_component(g, B1, B2, R1p, R2p) is None


def _creates_cycle(parent: dict, tail: int, head: int) -> bool:
    x = tail
    while True:
        if x == head:
            return True
        if x not in parent:
            return False
        x = parent[x]


def exchange_roots(g: MixedGraph, req: RootExchangeRequest):
    """Return ``(B1p, B2p)`` partitioning ``B1 | B2`` with roots ``R1p``, ``R2p``.

    Raises :class:`InfeasibleExchange` (carrying the offending source
    component) when the request is infeasible.
    """
    B1, B2, R1p, R2p = _normalize(g, req)
    bad = _missing_component(g, B1, B2, R1p, R2p)
    if bad is not None:
        raise InfeasibleExchange(
            f"source component {sorted(bad)} misses a target root set", component=bad
        )
    if R1p == root_set(g, B1) and R2p == root_set(g, B2):
        return B1, B2

    entering = {}
    for a in sorted(B1 | B2, key=lambda e: e.index):
        entering.setdefault(g.head(a), []).append(a)

    side1, side2 = [], []
    parent1, parent2 = {}, {}
    choices = []
    for v in g.vertices:
        arcs = entering.get(v, [])
        need1, need2 = v not in R1p, v not in R2p
        assert len(arcs) == need1 + need2, "in-degree must match the root targets"
        if len(arcs) == 2:
            choices.append((v, arcs[0], arcs[1]))
        elif len(arcs) == 1:
            a = arcs[0]
            side, parent = (side1, parent1) if need1 else (side2, parent2)
            if _creates_cycle(parent, g.tail(a), v):
                raise AssertionError("forced arcs already close a cycle in a feasible request")
            side.append(a)
            parent[v] = g.tail(a)

    def search(i):
        if i == len(choices):
            return True
        v, first, second = choices[i]
        for a1, a2 in ((first, second), (second, first)):
            t1, t2 = g.tail(a1), g.tail(a2)
            if _creates_cycle(parent1, t1, v) or _creates_cycle(parent2, t2, v):
                continue
            parent1[v], parent2[v] = t1, t2
            side1.append(a1)
            side2.append(a2)
            if search(i + 1):
                return True
            side1.pop()
            side2.pop()
            del parent1[v], parent2[v]
        return False

    if not search(0):
        raise AssertionError("no repartition found although every source component meets both targets")

    B1p, B2p = frozenset(side1), frozenset(side2)
    if not (is_branching(g, B1p) and is_branching(g, B2p)):
        raise AssertionError("exchange produced a non-branching")
    if root_set(g, B1p) != R1p or root_set(g, B2p) != R2p:
        raise AssertionError("exchange produced wrong root sets")
    return B1p, B2p
