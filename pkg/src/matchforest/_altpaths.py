"""Auxiliary-graph machinery shared by the matching-forest and edge-cover
pair equalizers: contraction of source components, alternating path/cycle
decomposition, and the side flip followed by a root exchange."""
from __future__ import annotations

from dataclasses import dataclass, field

from .branching_exchange import RootExchangeRequest, exchange_feasible, exchange_roots
from .graph_core import MixedGraph, source_components


@dataclass(frozen=True)
class AuxEdge:
    side: int  # 1 or 2
    bullet: bool  # pendant edge (bullet node or split node) rather than a full edge
    element: object  # ElementId of the graph edge, or None for matching-forest bullets
    ends: tuple
    roots: frozenset  # original vertices this aux edge covers


@dataclass
class AuxGraph:
    graph: MixedGraph
    F1: frozenset
    F2: frozenset
    B1: frozenset
    B2: frozenset
    R1: frozenset
    R2: frozenset
    num_nodes: int
    node_names: tuple
    edges: tuple
    contractions: tuple
    representative: tuple = field(repr=False, default=())

    def side_edges(self, side):
        return [e for e in self.edges if e.side == side]


def contract_sources(g: MixedGraph, B1, B2, R1, R2):
    """Merge one (u, v) per source component of ``B1 | B2`` with
    u in R1 - R2 and v in R2 - R1, taking the smallest such pair."""
    rep = list(g.vertices)
    pairs = []
    for comp in source_components(g, B1 | B2):
        only1 = sorted(comp & (R1 - R2))
        only2 = sorted(comp & (R2 - R1))
        if only1 and only2:
            u, v = only1[0], only2[0]
            rep[v] = u
            pairs.append((u, v))
    return tuple(rep), tuple(pairs)


def base_names(g: MixedGraph, rep):
    names = []
    for x in g.vertices:
        merged = [y for y in g.vertices if rep[y] == x]
        names.append("+".join(map(str, merged)) if merged else f"({x})")
    return names


def check_matchings(aux: AuxGraph) -> None:
    """Each side is a matching on the auxiliary nodes, with no self-loops."""
    for side in (1, 2):
        seen = set()
        for e in aux.side_edges(side):
            a, b = e.ends
            assert a != b, "auxiliary self-loop"
            assert a not in seen and b not in seen, f"side {side} is not a matching in the auxiliary graph"
            seen.update((a, b))


def decompose_alternating(aux: AuxGraph):
    """Split the auxiliary edges into alternating paths and cycles.

    Returns ``(paths, cycles)`` as tuples of tuples of edge indices. Paths
    start at their end node with the smaller id; both are listed in order
    of their first discovery.
    """
    adj = [[] for _ in range(aux.num_nodes)]
    for idx, e in enumerate(aux.edges):
        a, b = e.ends
        adj[a].append(idx)
        adj[b].append(idx)
    assert all(len(x) <= 2 for x in adj)

    def other(idx, node):
        a, b = aux.edges[idx].ends
        return b if node == a else a

    used = set()
    paths = []
    for start in range(aux.num_nodes):
        if len(adj[start]) != 1 or adj[start][0] in used:
            continue
        path = []
        node, idx = start, adj[start][0]
        while True:
            path.append(idx)
            used.add(idx)
            node = other(idx, node)
            nxt = [j for j in adj[node] if j != idx]
            if not nxt:
                break
            idx = nxt[0]
        paths.append(tuple(path))

    cycles = []
    for first in range(len(aux.edges)):
        if first in used:
            continue
        cycle = []
        node, idx = aux.edges[first].ends[0], first
        while idx not in used:
            cycle.append(idx)
            used.add(idx)
            node = other(idx, node)
            idx = next(j for j in adj[node] if j != idx)
        cycles.append(tuple(cycle))

    for p in paths:
        _assert_alternates(aux, p)
    for c in cycles:
        _assert_alternates(aux, c)
        assert len(c) % 2 == 0
    return tuple(paths), tuple(cycles)


def _assert_alternates(aux, seq):
    sides = [aux.edges[i].side for i in seq]
    assert all(a != b for a, b in zip(sides, sides[1:])), "walk does not alternate"


def path_end_edges(aux: AuxGraph, path):
    return aux.edges[path[0]], aux.edges[path[-1]]


def check_selection(aux: AuxGraph, selected):
    paths, _ = decompose_alternating(aux)
    known = set(paths)
    chosen = [tuple(p) for p in selected]
    flat = [i for p in chosen for i in p]
    assert len(flat) == len(set(flat)), "selected paths overlap"
    for p in chosen:
        assert p in known or tuple(reversed(p)) in known, "selected sequence is not a decomposition path"
    return frozenset(flat)


def flip_and_exchange(aux: AuxGraph, flipped):
    """Move the auxiliary edges in ``flipped`` to the other side, derive the
    new root targets and repartition the arcs accordingly.

    Returns ``(E1, E2, B1p, B2p, R1p, R2p)``.
    """
    g = aux.graph
    new_edges = {1: set(), 2: set()}
    new_roots = {1: set(), 2: set()}
    for idx, e in enumerate(aux.edges):
        side = 3 - e.side if idx in flipped else e.side
        new_roots[side] |= e.roots
        if e.element is not None:
            new_edges[side].add(e.element)
    R1p, R2p = frozenset(new_roots[1]), frozenset(new_roots[2])
    req = RootExchangeRequest(aux.B1, aux.B2, R1p, R2p)
    assert exchange_feasible(g, req), "root exchange must be feasible after contraction"
    B1p, B2p = exchange_roots(g, req)
    return frozenset(new_edges[1]), frozenset(new_edges[2]), B1p, B2p, R1p, R2p
