"""Maximum matching forests, minimum mixed edge covers and the duality between
them, plus minimum-weight covers through perfect matching forests in an
enlarged graph. Optima are exact (exhaustive) at desk scale."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, UsageError
from .graph_core import ElementId, MixedGraph, arcs_of, covered, edges_of
from .oracle import DEFAULT_BUDGET, OracleBudget, enumerate_structures
from .structures import (
    StructureKind,
    is_matching_forest,
    is_minimal_mec,
    is_mixed_edge_cover,
    is_perfect_matching_forest,
)


class MixSize:
    """Edges count one, arcs one half. Stored doubled so arithmetic is exact."""

    __slots__ = ("doubled",)

    def __init__(self, doubled: int):
        self.doubled = int(doubled)

    @classmethod
    def of(cls, F) -> "MixSize":
        return cls(2 * len(edges_of(F)) + len(arcs_of(F)))

    @classmethod
    def from_value(cls, value) -> "MixSize":
        twice = Fraction(value) * 2
        if twice.denominator != 1:
            raise UsageError(f"{value} is not a half-integer")
        return cls(int(twice))

    def as_fraction(self) -> Fraction:
        return Fraction(self.doubled, 2)

    def __float__(self):
        return self.doubled / 2

    def _other(self, other):
        if isinstance(other, MixSize):
            return other.doubled
        if isinstance(other, (int, Fraction)):
            return Fraction(other) * 2
        if isinstance(other, float):
            return other * 2
        return NotImplemented

    def __eq__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self.doubled == o

    def __lt__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self.doubled < o

    def __le__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self.doubled <= o

    def __gt__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self.doubled > o

    def __ge__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self.doubled >= o

    def __hash__(self):
        return hash(self.as_fraction())

    def __add__(self, other):
        if isinstance(other, MixSize):
            return MixSize(self.doubled + other.doubled)
        return MixSize.from_value(self.as_fraction() + other)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, MixSize):
            return MixSize(self.doubled - other.doubled)
        return MixSize.from_value(self.as_fraction() - other)

    def __rsub__(self, other):
        return MixSize.from_value(other - self.as_fraction())

    def __str__(self):
        return str(self.doubled // 2) if self.doubled % 2 == 0 else f"{self.doubled / 2:.1f}"

    def __repr__(self):
        return f"MixSize({self})"

    def to_json(self):
        return self.doubled // 2 if self.doubled % 2 == 0 else self.doubled / 2


def mix_size(F) -> MixSize:
    return MixSize.of(F)


def dist_from_covered_edges(g: MixedGraph) -> dict:
    """Shortest directed distance from an edge endpoint, ``math.inf`` if none."""
    dist = {v: math.inf for v in g.vertices}
    queue = deque()
    for v in sorted(covered(g, g.all_edges)):
        dist[v] = 0
        queue.append(v)
    out = [[] for _ in g.vertices]
    for t, h in g.arcs:
        out[t].append(h)
    while queue:
        x = queue.popleft()
        for h in out[x]:
            if dist[h] == math.inf:
                dist[h] = dist[x] + 1
                queue.append(h)
    return dist


def admits_mec(g: MixedGraph) -> bool:
    return all(d != math.inf for d in dist_from_covered_edges(g).values())


def _uncovered_distance(g, F, dist):
    return sum(dist[v] for v in g.vertices if v not in covered(g, F))


def _best_by_mix_size(g, kind, budget, want_max):
    best = None
    for F in enumerate_structures(g, kind, budget):
        size = MixSize.of(F).doubled
        if best is None or (size > best[0] if want_max else size < best[0]):
            best = (size, F)
    return best


def max_matching_forest(g: MixedGraph, budget: OracleBudget = DEFAULT_BUDGET):
    """``(nu, F)``: a maximum mix-size matching forest.

    When the graph admits a mixed edge cover, the forest is then shifted
    along shortest arc paths until every vertex it leaves uncovered is an
    edge endpoint.
    """
    _, F = _best_by_mix_size(g, StructureKind.MATCHING_FOREST, budget, True)
    nu = MixSize.of(F)
    dist = dist_from_covered_edges(g)
    if not admits_mec(g):
        return nu, F
    while True:
        far = [v for v in g.vertices if v not in covered(g, F) and dist[v] > 0]
        if not far:
            break
        v = far[0]
        a = next(
            x for x in g.sorted(g.all_arcs) if g.head(x) == v and dist[g.tail(x)] == dist[v] - 1
        )
        u = g.tail(a)
        assert not is_matching_forest(g, F | {a}), "a maximum forest cannot absorb the arc"
        prev = [b for b in arcs_of(F) if g.head(b) == u]
        assert len(prev) == 1, "the blocking cycle enters the arc's tail"
        before = _uncovered_distance(g, F, dist)
        F = (F | {a}) - {prev[0]}
        assert is_matching_forest(g, F) and MixSize.of(F) == nu
        assert _uncovered_distance(g, F, dist) < before
    return nu, F


def mf_to_mec_cover(g: MixedGraph, F) -> frozenset:
    """Extend a maximum matching forest by one incident edge (lowest index)
    per uncovered vertex; the result is a mixed edge cover of mix-size
    ``|V| - nu``."""
    F = g.check_set(F)
    if not is_matching_forest(g, F):
        raise DomainError("mf_to_mec_cover requires a matching forest")
    H = set(F)
    for v in g.vertices:
        if v in covered(g, F):
            continue
        inc = g.incident_edges[v]
        if not inc:
            raise DomainError(f"uncovered vertex {v} has no incident edge")
        H.add(inc[0])
    H = frozenset(H)
    assert is_mixed_edge_cover(g, H)
    assert MixSize.of(H) == MixSize.of(F) + (g.num_vertices - MixSize.of(F).doubled)
    return H


def min_mixed_edge_cover(g: MixedGraph, budget: OracleBudget = DEFAULT_BUDGET):
    """``(rho, H)``: a minimum mix-size mixed edge cover."""
    if not admits_mec(g):
        raise DomainError("the graph has no mixed edge cover")
    size, H = _best_by_mix_size(g, StructureKind.MIXED_EDGE_COVER, budget, False)
    return MixSize(size), H


def mec_to_mf(g: MixedGraph, H) -> frozenset:
    """A maximal matching forest inside a minimal cover: all its arcs, then
    edges greedily by index."""
    H = g.check_set(H)
    if not is_minimal_mec(g, H):
        raise DomainError("mec_to_mf requires a minimal mixed edge cover")
    F = set(arcs_of(H))
    assert is_matching_forest(g, F)
    for e in g.sorted(edges_of(H)):
        if is_matching_forest(g, F | {e}):
            F.add(e)
    F = frozenset(F)
    assert all(not is_matching_forest(g, F | {e}) for e in H - F)
    assert MixSize.of(F) >= g.num_vertices - MixSize.of(H)
    return F


@dataclass
class OptimumReport:
    nu: MixSize
    rho: MixSize | None
    max_forest: frozenset
    min_cover: frozenset | None
    built_cover: frozenset | None = None
    built_forest: frozenset | None = None

    def identity_holds(self, g: MixedGraph) -> bool:
        return self.rho is not None and self.nu + self.rho == g.num_vertices

    def to_dict(self, g: MixedGraph) -> dict:
        def els(F):
            return None if F is None else [repr(e) for e in g.sorted(F)]

        return {
            "nu": self.nu.to_json(),
            "rho": None if self.rho is None else self.rho.to_json(),
            "num_vertices": g.num_vertices,
            "identity": self.identity_holds(g),
            "max_matching_forest": els(self.max_forest),
            "min_mixed_edge_cover": els(self.min_cover),
            "cover_from_forest": els(self.built_cover),
            "forest_from_cover": els(self.built_forest),
        }


def gallai(g: MixedGraph, budget: OracleBudget = DEFAULT_BUDGET) -> OptimumReport:
    nu, F = max_matching_forest(g, budget)
    if not admits_mec(g):
        return OptimumReport(nu, None, F, None)
    rho, H = min_mixed_edge_cover(g, budget)
    return OptimumReport(nu, rho, F, H, mf_to_mec_cover(g, F), mec_to_mf(g, H))


# minimum weight covers


def _check_weights(g: MixedGraph, w) -> dict:
    weights = {}
    for e in g.elements:
        if e not in w:
            raise UsageError(f"missing weight for {e!r}")
        x = w[e]
        if isinstance(x, bool) or not isinstance(x, int):
            raise UsageError(f"weight of {e!r} must be an integer")
        if x < 0:
            raise UsageError("negative weights are not supported")
        weights[e] = x
    return weights


@dataclass(frozen=True)
class ReductionGraph:
    """Enlarged graph on ``V`` plus a copy ``V'`` (vertex ``v + n``).

    Edges: the original edges, then ``v v'`` for each vertex with an
    incident edge. Arcs: the original arcs, then ``u -> v'`` for all u, v.
    """

    original: MixedGraph
    graph: MixedGraph
    cost: dict = field(hash=False)
    copy_edges: dict = field(hash=False)  # v -> ElementId of v v' in ``graph``
    cheapest_edge: dict = field(hash=False)  # v -> cheapest original edge at v

    def back_map(self, F) -> frozenset:
        g, H = self.original, self.graph
        out = set()
        copy_to_vertex = {e: v for v, e in self.copy_edges.items()}
        for e in F:
            if e in copy_to_vertex:
                out.add(self.cheapest_edge[copy_to_vertex[e]])
            elif e.is_edge and e.index < len(g.edges):
                out.add(e)
            elif e.is_arc and e.index < len(g.arcs):
                out.add(e)
        return frozenset(out)


def build_reduction(g: MixedGraph, w) -> ReductionGraph:
    w = _check_weights(g, w)
    n = g.num_vertices
    cheapest = {}
    for v in g.vertices:
        inc = g.incident_edges[v]
        if inc:
            cheapest[v] = min(inc, key=lambda e: (w[e], e.index))
    edges = list(g.edges)
    copy_edges = {}
    for v in sorted(cheapest):
        copy_edges[v] = ElementId.edge(len(edges))
        edges.append((v, v + n))
    arcs = list(g.arcs) + [(u, v + n) for u in range(n) for v in range(n)]
    H = MixedGraph(2 * n, tuple(edges), tuple(arcs), max_elements=max(256, len(edges) + len(arcs)))
    cost = {e: w[e] for e in g.elements}
    for v, e in copy_edges.items():
        cost[e] = w[cheapest[v]]
    for i in range(len(g.arcs), len(arcs)):
        cost[ElementId.arc(i)] = 0
    return ReductionGraph(g, H, cost, copy_edges, cheapest)


def min_cost_pmf(g: MixedGraph, cost: dict):
    """Exact minimum-cost perfect matching forest by branch and bound, or
    ``None`` when there is none. Costs must be nonnegative integers.

    Vertices are covered in index order, each by an edge to a still
    uncovered vertex or by an entering arc that closes no directed cycle.
    """
    n = g.num_vertices
    opts_edge = [[] for _ in range(n)]
    opts_arc = [[] for _ in range(n)]
    for e in g.sorted(g.elements):
        if e.is_edge:
            u, v = g.endpoints(e)
            opts_edge[u].append((cost[e], e, v))
            opts_edge[v].append((cost[e], e, u))
        else:
            opts_arc[g.head(e)].append((cost[e], e, g.tail(e)))
    for lst in opts_edge + opts_arc:
        lst.sort(key=lambda t: (t[0], t[1].index))

    # doubled per-vertex lower bound, ignoring which partners remain free
    cheapest2 = []
    for v in range(n):
        cands = [2 * c for c, _, _ in opts_arc[v]] + [c for c, _, _ in opts_edge[v]]
        cheapest2.append(min(cands) if cands else None)
    if any(c is None for c in cheapest2):
        return None

    cov = [False] * n
    parent = [-1] * n
    chosen = []
    best = [None, None]

    def closes_cycle(tail, head):
        x = tail
        while x != -1:
            if x == head:
                return True
            x = parent[x]
        return False

    def rec(start, spent):
        v = start
        while v < n and cov[v]:
            v += 1
        if v == n:
            if best[0] is None or spent < best[0]:
                best[0], best[1] = spent, frozenset(chosen)
            return
        if best[0] is not None:
            bound = 2 * spent + sum(cheapest2[x] for x in range(v, n) if not cov[x])
            if bound >= 2 * best[0]:
                return
        cov[v] = True
        for c, e, other in opts_edge[v]:
            if cov[other]:
                continue
            cov[other] = True
            chosen.append(e)
            rec(v + 1, spent + c)
            chosen.pop()
            cov[other] = False
        for c, a, tail in opts_arc[v]:
            if closes_cycle(tail, v):
                continue
            parent[v] = tail
            chosen.append(a)
            rec(v + 1, spent + c)
            chosen.pop()
            parent[v] = -1
        cov[v] = False

    rec(0, 0)
    if best[0] is None:
        return None
    assert is_perfect_matching_forest(g, best[1])
    return best[1], best[0]


def min_weight_mec(g: MixedGraph, w):
    """``(F, weight)``: a minimum-weight mixed edge cover via the reduction."""
    w = _check_weights(g, w)
    if not admits_mec(g):
        raise DomainError("the graph has no mixed edge cover")
    red = build_reduction(g, w)
    found = min_cost_pmf(red.graph, red.cost)
    assert found is not None, "a cover always yields a perfect matching forest in the reduction"
    Fh, value = found
    F = red.back_map(Fh)
    assert is_mixed_edge_cover(g, F)
    weight = sum(w[e] for e in F)
    assert weight == value, "back-mapped cover must attain the reduction optimum"
    return F, weight


__all__ = [
    "MixSize",
    "OptimumReport",
    "ReductionGraph",
    "admits_mec",
    "build_reduction",
    "dist_from_covered_edges",
    "gallai",
    "max_matching_forest",
    "mec_to_mf",
    "mf_to_mec_cover",
    "min_cost_pmf",
    "min_mixed_edge_cover",
    "min_weight_mec",
    "mix_size",
]
