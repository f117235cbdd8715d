"""Validity predicates and canonicalizers for matchings, branchings,
matching forests, mixed edge covers and mixed covering forests."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError, UsageError
from .graph_core import (
    ARC,
    EDGE,
    MixedGraph,
    arcs_of,
    cover_counts,
    covered,
    edges_of,
    reachable_from,
    underlying_has_cycle,
)


class StructureKind(str, Enum):
    MATCHING = "matching"
    BRANCHING = "branching"
    MATCHING_FOREST = "mf"
    PERFECT_MATCHING_FOREST = "pmf"
    MIXED_EDGE_COVER = "mec"
    MIXED_COVERING_FOREST = "mcf"

    @classmethod
    def parse(cls, value) -> "StructureKind":
        if isinstance(value, cls):
            return value
        aliases = {
            "matching-forest": cls.MATCHING_FOREST,
            "perfect-matching-forest": cls.PERFECT_MATCHING_FOREST,
            "mixed-edge-cover": cls.MIXED_EDGE_COVER,
            "mixed-covering-forest": cls.MIXED_COVERING_FOREST,
        }
        key = str(value).lower()
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            raise UsageError(f"unknown structure kind {value!r}") from None


@dataclass(frozen=True)
class BranchingView:
    arcs: frozenset
    roots: frozenset


def _check_only(F, kind, what):
    for e in F:
        if e.kind != kind:
            raise UsageError(f"{what} must contain only {'edges' if kind == EDGE else 'arcs'}; got {e!r}")


def _has_directed_cycle(g: MixedGraph, B) -> bool:
    """Directed cycle test for an arc set with in-degree at most one."""
    parent = {}
    for a in B:
        t, h = g.arcs[a.index]
        parent[h] = t
    state = {}
    for start in parent:
        path = []
        v = start
        while v in parent and v not in state:
            state[v] = 1
            path.append(v)
            v = parent[v]
        if state.get(v) == 1:
            return True
        for x in path:
            state[x] = 2
    return False


def is_matching(g: MixedGraph, M) -> bool:
    M = g.check_set(M)
    _check_only(M, EDGE, "a matching")
    return all(c <= 1 for c in cover_counts(g, M).values())


def is_branching(g: MixedGraph, B) -> bool:
    B = g.check_set(B)
    _check_only(B, ARC, "a branching")
    if any(c > 1 for c in cover_counts(g, B).values()):
        return False
    return not _has_directed_cycle(g, B)


def root_set(g: MixedGraph, B) -> frozenset:
    """``R(B) = V - covered(B)`` for a branching ``B``."""
    B = g.check_set(B)
    if not is_branching(g, B):
        raise DomainError("root_set requires a branching")
    return frozenset(g.vertices) - covered(g, B)


def _mf_by_definition(g: MixedGraph, F) -> bool:
    if any(c > 1 for c in cover_counts(g, F).values()):
        return False
    return not underlying_has_cycle(g, F)


def _mf_by_characterization(g: MixedGraph, F) -> bool:
    M, B = edges_of(F), arcs_of(F)
    if not is_branching(g, B) or not is_matching(g, M):
        return False
    return covered(g, M) <= frozenset(g.vertices) - covered(g, B)


def is_matching_forest(g: MixedGraph, F) -> bool:
    """Branching plus a matching on its roots (equivalently: acyclic and
    every vertex covered at most once)."""
    F = g.check_set(F)
    return _mf_by_characterization(g, F)


def is_perfect_matching_forest(g: MixedGraph, F) -> bool:
    F = g.check_set(F)
    if any(c != 1 for c in cover_counts(g, F).values()):
        return False
    return is_matching_forest(g, F)


def _mec_by_definition(g: MixedGraph, F) -> bool:
    reach = reachable_from(g, arcs_of(F), covered(g, edges_of(F)))
    return len(reach) == g.num_vertices


def is_mixed_edge_cover(g: MixedGraph, F) -> bool:
    """Every vertex is reachable along arcs of F from an endpoint of an edge of F."""
    F = g.check_set(F)
    return _mec_by_definition(g, F)


def is_mixed_covering_forest(g: MixedGraph, F) -> bool:
    F = g.check_set(F)
    if any(c < 1 for c in cover_counts(g, F).values()):
        return False
    return not underlying_has_cycle(g, F)


_PREDICATES = {
    StructureKind.MATCHING: lambda g, F: all(e.kind == EDGE for e in F) and is_matching(g, F),
    StructureKind.BRANCHING: lambda g, F: all(e.kind == ARC for e in F) and is_branching(g, F),
    StructureKind.MATCHING_FOREST: is_matching_forest,
    StructureKind.PERFECT_MATCHING_FOREST: is_perfect_matching_forest,
    StructureKind.MIXED_EDGE_COVER: is_mixed_edge_cover,
    StructureKind.MIXED_COVERING_FOREST: is_mixed_covering_forest,
}


def is_structure(g: MixedGraph, F, kind) -> bool:
    """Dispatch to the predicate for ``kind``. Wrong element kinds give False."""
    return _PREDICATES[StructureKind.parse(kind)](g, g.check_set(F))


def _removal_order(g: MixedGraph, F) -> list:
    arcs = sorted(arcs_of(F), key=lambda e: e.index, reverse=True)
    edges = sorted(edges_of(F), key=lambda e: e.index, reverse=True)
    return arcs + edges


def is_minimal_mec(g: MixedGraph, F) -> bool:
    F = g.check_set(F)
    if not _mec_by_definition(g, F):
        return False
    return all(not _mec_by_definition(g, F - {e}) for e in F)


def minimalize_mec(g: MixedGraph, F) -> frozenset:
    """Inclusion-minimal mixed edge cover inside ``F``.

    Arcs are tried first, then edges, each in descending index. One pass
    suffices because covers are closed under supersets.
    """
    F = g.check_set(F)
    if not _mec_by_definition(g, F):
        raise DomainError("minimalize_mec requires a mixed edge cover")
    current = set(F)
    for e in _removal_order(g, F):
        current.discard(e)
        if not _mec_by_definition(g, current):
            current.add(e)
    result = frozenset(current)
    assert is_mixed_covering_forest(g, result), "minimal cover must be a covering forest"
    return result


def mec_witness_branching(g: MixedGraph, F) -> BranchingView:
    """A branching ``B`` inside ``F`` whose roots are all covered by edges of ``F``.

    Breadth-first from the edge-covered vertices, scanning arcs in index order.
    """
    F = g.check_set(F)
    if not _mec_by_definition(g, F):
        raise DomainError("mec_witness_branching requires a mixed edge cover")
    start = sorted(covered(g, edges_of(F)))
    out_arcs = [[] for _ in g.vertices]
    for a in sorted(arcs_of(F), key=lambda e: e.index):
        out_arcs[g.arcs[a.index][0]].append(a)
    seen = set(start)
    queue = deque(start)
    chosen = []
    while queue:
        x = queue.popleft()
        for a in out_arcs[x]:
            h = g.arcs[a.index][1]
            if h not in seen:
                seen.add(h)
                chosen.append(a)
                queue.append(h)
    B = frozenset(chosen)
    return BranchingView(arcs=B, roots=frozenset(g.vertices) - covered(g, B))


def star_decomposition(g: MixedGraph, N) -> list:
    """Split an edge set that is a disjoint union of stars into its stars.

    Returns ``(centers, edges)`` pairs sorted by smallest edge index, where
    ``centers`` is a tuple of admissible centers: the unique center for stars
    with at least two edges, both endpoints for a single edge.
    """
    N = g.check_set(N)
    _check_only(N, EDGE, "star_decomposition input")
    adj = {}
    for e in N:
        u, v = g.edges[e.index]
        adj.setdefault(u, []).append(e)
        adj.setdefault(v, []).append(e)
    seen = set()
    stars = []
    for e in sorted(N, key=lambda x: x.index):
        if e in seen:
            continue
        comp_edges, comp_vertices = set(), set()
        stack = list(g.edges[e.index])
        while stack:
            x = stack.pop()
            if x in comp_vertices:
                continue
            comp_vertices.add(x)
            for f in adj[x]:
                if f not in comp_edges:
                    comp_edges.add(f)
                    stack.extend(g.edges[f.index])
        seen |= comp_edges
        if len(comp_edges) == 1:
            stars.append((tuple(sorted(comp_vertices)), frozenset(comp_edges)))
            continue
        centers = [x for x in comp_vertices if len(adj[x]) == len(comp_edges)]
        leaves_ok = all(len(adj[x]) == 1 for x in comp_vertices if x not in centers)
        if len(centers) != 1 or not leaves_ok or len(comp_vertices) != len(comp_edges) + 1:
            raise DomainError("edge set is not a disjoint union of stars")
        stars.append(((centers[0],), frozenset(comp_edges)))
    return stars


__all__ = [
    "BranchingView",
    "StructureKind",
    "is_branching",
    "is_matching",
    "is_matching_forest",
    "is_minimal_mec",
    "is_mixed_covering_forest",
    "is_mixed_edge_cover",
    "is_perfect_matching_forest",
    "is_structure",
    "mec_witness_branching",
    "minimalize_mec",
    "root_set",
    "star_decomposition",
]
