"""Inequality systems for matching forests, perfect matching forests and
mixed edge covers, checked exactly over all subpartitions of a tiny vertex
set, and a brute-force comparison of their integer points with the
structure families."""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import UsageError
from .graph_core import MixedGraph
from .oracle import structure_table
from .structures import StructureKind

MAX_SUBPARTITION_VERTICES = 5
MAX_HULL_ELEMENTS = 10


@dataclass(frozen=True)
class Subpartition:
    classes: tuple  # frozensets ordered by smallest vertex

    @property
    def union(self) -> frozenset:
        return frozenset().union(*self.classes)

    def __len__(self):
        return len(self.classes)

    @property
    def half_up(self) -> int:
        return (len(self.classes) + 1) // 2

    def __repr__(self):
        return "{" + ", ".join("{" + ",".join(map(str, sorted(z))) + "}" for z in self.classes) + "}"


def _set_partitions(items):
    """All set partitions of ``items`` via restricted growth strings."""
    items = list(items)
    if not items:
        yield ()
        return
    labels = [0] * len(items)

    def rec(i, top):
        if i == len(items):
            blocks = [[] for _ in range(top + 1)]
            for x, b in zip(items, labels):
                blocks[b].append(x)
            yield tuple(frozenset(b) for b in blocks)
            return
        for b in range(top + 2):
            labels[i] = b
            yield from rec(i + 1, max(top, b))

    labels[0] = 0
    yield from rec(1, 0)


def enumerate_subpartitions(g, cap: int = MAX_SUBPARTITION_VERTICES):
    """Every subpartition of the vertex set exactly once, empty one first."""
    n = g.num_vertices if isinstance(g, MixedGraph) else int(g)
    if n > cap:
        raise UsageError(f"subpartition enumeration is capped at {cap} vertices")
    for mask in range(1 << n):
        support = [v for v in range(n) if mask >> v & 1]
        for classes in _set_partitions(support):
            yield Subpartition(classes)


# coefficient extractors; each returns the set of elements with coefficient 1


def head_elements(g: MixedGraph, v: int) -> frozenset:
    return frozenset(e for e in g.elements if v in g.endpoints(e)[e.is_arc:])


def inside_elements(g: MixedGraph, S: Subpartition) -> frozenset:
    """Edges inside the union plus arcs inside a single class."""
    U = S.union
    out = {e for e in g.all_edges if set(g.endpoints(e)) <= U}
    for Z in S.classes:
        out |= {a for a in g.all_arcs if set(g.endpoints(a)) <= Z}
    return frozenset(out)


def crossing_elements(g: MixedGraph, S: Subpartition) -> frozenset:
    """Edges with an end in the union plus arcs entering a class."""
    U = S.union
    out = {e for e in g.all_edges if set(g.endpoints(e)) & U}
    for Z in S.classes:
        out |= {a for a in g.all_arcs if g.head(a) in Z and g.tail(a) not in Z}
    return frozenset(out)


class Violation(NamedTuple):
    constraint: str
    where: object
    lhs: object
    rhs: object

    def __str__(self):
        return f"{self.constraint} at {self.where}: lhs {self.lhs} vs rhs {self.rhs}"


class SystemCheck(NamedTuple):
    ok: bool
    violation: Violation | None = None

    def __bool__(self):
        return self.ok


def _vector(g: MixedGraph, x) -> dict:
    if isinstance(x, dict):
        for e in x:
            g.check_element(e)
        return {e: x.get(e, 0) for e in g.elements}
    x = list(x)
    if len(x) != g.num_elements:
        raise UsageError(f"vector has {len(x)} entries, graph has {g.num_elements} elements")
    return dict(zip(g.elements, x))


def _total(vec, elements):
    return sum(vec[e] for e in elements)


def _bounds(vec, upper):
    for e, val in vec.items():
        if val < 0:
            return Violation("nonnegativity", e, val, 0)
        if upper is not None and val > upper:
            return Violation("upper bound", e, val, upper)
    return None


def _check(g, x, heads_sense, upper, subpartition_sense, cap):
    vec = _vector(g, x)
    bad = _bounds(vec, upper)
    if bad:
        return SystemCheck(False, bad)
    if heads_sense is not None:
        for v in g.vertices:
            lhs = _total(vec, head_elements(g, v))
            if (heads_sense == "<=" and lhs > 1) or (heads_sense == "==" and lhs != 1):
                return SystemCheck(False, Violation(f"head {heads_sense} 1", v, lhs, 1))
    for S in enumerate_subpartitions(g, cap):
        if not len(S):
            continue
        if subpartition_sense == "<=":
            lhs, rhs = _total(vec, inside_elements(g, S)), len(S.union) - S.half_up
            if lhs > rhs:
                return SystemCheck(False, Violation("subpartition <=", S, lhs, rhs))
        else:
            lhs, rhs = _total(vec, crossing_elements(g, S)), S.half_up
            if lhs < rhs:
                return SystemCheck(False, Violation("subpartition >=", S, lhs, rhs))
    return SystemCheck(True)


def mf_system_check(g: MixedGraph, x, cap: int = MAX_SUBPARTITION_VERTICES) -> SystemCheck:
    return _check(g, x, "<=", None, "<=", cap)


def pmf_system_check(g: MixedGraph, x, cap: int = MAX_SUBPARTITION_VERTICES) -> SystemCheck:
    return _check(g, x, "==", None, ">=", cap)


def mec_system_check(g: MixedGraph, x, cap: int = MAX_SUBPARTITION_VERTICES) -> SystemCheck:
    return _check(g, x, None, 1, ">=", cap)


_SYSTEM_CHECKS = {
    StructureKind.MATCHING_FOREST: mf_system_check,
    StructureKind.PERFECT_MATCHING_FOREST: pmf_system_check,
    StructureKind.MIXED_EDGE_COVER: mec_system_check,
}


def system_check(g: MixedGraph, x, kind) -> SystemCheck:
    kind = StructureKind.parse(kind)
    if kind not in _SYSTEM_CHECKS:
        raise UsageError(f"no inequality system for {kind.value}")
    return _SYSTEM_CHECKS[kind](g, x)


def _popcount(x: int) -> int:
    return bin(x).count("1")


def integer_points(g: MixedGraph, kind) -> set:
    """Masks of all 0/1 vectors satisfying the system.

    All coefficients are 0/1, so each left-hand side is a popcount of the
    vector mask against a coefficient mask. 0/1 vectors are all the integer
    points: the head constraints bound every entry by 1 for the forest
    systems, and the cover system has explicit upper bounds.
    """
    kind = StructureKind.parse(kind)
    if kind not in _SYSTEM_CHECKS:
        raise UsageError(f"no inequality system for {kind.value}")
    le, eq, ge = [], [], []
    if kind is not StructureKind.MIXED_EDGE_COVER:
        target = eq if kind is StructureKind.PERFECT_MATCHING_FOREST else le
        for v in g.vertices:
            target.append((g.mask(head_elements(g, v)), 1))
    for S in enumerate_subpartitions(g):
        if not len(S):
            continue
        if kind is StructureKind.MATCHING_FOREST:
            le.append((g.mask(inside_elements(g, S)), len(S.union) - S.half_up))
        else:
            ge.append((g.mask(crossing_elements(g, S)), S.half_up))
    points = set()
    for x in range(1 << g.num_elements):
        if all(_popcount(x & c) <= r for c, r in le) and all(_popcount(x & c) == r for c, r in eq) \
                and all(_popcount(x & c) >= r for c, r in ge):
            points.add(x)
    return points


def verify_integer_hull(g: MixedGraph, kind) -> bool:
    """Do the integer points of the system coincide with the structures?"""
    if g.num_vertices > MAX_SUBPARTITION_VERTICES or g.num_elements > MAX_HULL_ELEMENTS:
        raise UsageError(
            f"hull verification is capped at {MAX_SUBPARTITION_VERTICES} vertices and {MAX_HULL_ELEMENTS} elements"
        )
    table = structure_table(g, kind)
    family = {x for x, ok in enumerate(table) if ok}
    return integer_points(g, kind) == family


__all__ = [
    "MAX_HULL_ELEMENTS",
    "MAX_SUBPARTITION_VERTICES",
    "Subpartition",
    "SystemCheck",
    "Violation",
    "crossing_elements",
    "enumerate_subpartitions",
    "head_elements",
    "inside_elements",
    "integer_points",
    "mec_system_check",
    "mf_system_check",
    "pmf_system_check",
    "system_check",
    "verify_integer_hull",
]
