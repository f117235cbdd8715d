"""Mixed graph data model and elementary queries.

A mixed graph has undirected edges and directed arcs over vertices
``0..n-1``. Elements are addressed by :class:`ElementId` ``(kind, index)``
so parallel edges and arcs stay distinguishable. Element sets are plain
``frozenset`` objects of ids; vertex sets are ``frozenset`` of ints.

Both endpoints of an edge count as its heads; an arc has a single head.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import GraphValidationError, UsageError

MAX_VERTICES = 64
MAX_ELEMENTS = 256

EDGE = "E"
ARC = "A"


class ElementId(NamedTuple):
    kind: str
    index: int

    @classmethod
    def edge(cls, index: int) -> "ElementId":
        return cls(EDGE, index)

    @classmethod
    def arc(cls, index: int) -> "ElementId":
        return cls(ARC, index)

    @property
    def is_edge(self) -> bool:
        return self.kind == EDGE

    @property
    def is_arc(self) -> bool:
        return self.kind == ARC

    def __repr__(self) -> str:
        return f"{self.kind}{self.index}"


ElementSet = frozenset
VertexSet = frozenset


def edge_ids(*indices: int) -> frozenset:
    return frozenset(ElementId(EDGE, i) for i in indices)


def arc_ids(*indices: int) -> frozenset:
    return frozenset(ElementId(ARC, i) for i in indices)


@dataclass(frozen=True)
class MixedGraph:
    """Immutable mixed graph. Element order fixes the element ids."""

    num_vertices: int
    edges: tuple = ()
    arcs: tuple = ()
    max_vertices: int = field(default=MAX_VERTICES, compare=False, repr=False)
    max_elements: int = field(default=MAX_ELEMENTS, compare=False, repr=False)

    def __post_init__(self):
        n = self.num_vertices
        if not isinstance(n, int) or n < 0:
            raise GraphValidationError(f"num_vertices must be a nonnegative int, got {n!r}")
        edges = tuple(tuple(int(x) for x in e) for e in self.edges)
        arcs = tuple(tuple(int(x) for x in a) for a in self.arcs)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "arcs", arcs)
        if n > self.max_vertices:
            raise GraphValidationError(f"{n} vertices exceeds the cap of {self.max_vertices}")
        if len(edges) + len(arcs) > self.max_elements:
            raise GraphValidationError(
                f"{len(edges) + len(arcs)} elements exceeds the cap of {self.max_elements}"
            )
        for kind, items in ((EDGE, edges), (ARC, arcs)):
            for i, pair in enumerate(items):
                if len(pair) != 2:
                    raise GraphValidationError(f"{kind}{i}: expected a vertex pair, got {pair!r}")
                u, v = pair
                if not (0 <= u < n and 0 <= v < n):
                    raise GraphValidationError(f"{kind}{i}: vertex out of range in {pair!r}")
                if u == v:
                    raise GraphValidationError(f"{kind}{i}: loops are not allowed ({u},{v})")

    # -- element bookkeeping -------------------------------------------------

    @property
    def vertices(self) -> range:
        return range(self.num_vertices)

    @property
    def num_elements(self) -> int:
        return len(self.edges) + len(self.arcs)

    @cached_property
    def elements(self) -> tuple:
        """All element ids, edges first, in index order."""
        return tuple(ElementId(EDGE, i) for i in range(len(self.edges))) + tuple(
            ElementId(ARC, i) for i in range(len(self.arcs))
        )

    @cached_property
    def all_edges(self) -> frozenset:
        return frozenset(e for e in self.elements if e.kind == EDGE)

    @cached_property
    def all_arcs(self) -> frozenset:
        return frozenset(e for e in self.elements if e.kind == ARC)

    @cached_property
    def all_elements(self) -> frozenset:
        return frozenset(self.elements)

    def position(self, e: ElementId) -> int:
        """Global position: edges occupy ``0..|E|-1``, arcs follow."""
        return e.index if e.kind == EDGE else len(self.edges) + e.index

    def element_at(self, pos: int) -> ElementId:
        ne = len(self.edges)
        return ElementId(EDGE, pos) if pos < ne else ElementId(ARC, pos - ne)

    def is_valid(self, e) -> bool:
        if not isinstance(e, tuple) or len(e) != 2:
            return False
        kind, index = e
        if kind == EDGE:
            return isinstance(index, int) and 0 <= index < len(self.edges)
        if kind == ARC:
            return isinstance(index, int) and 0 <= index < len(self.arcs)
        return False

    def _known(self, e) -> bool:
        # fast path for ids that are already ElementId with int indices
        if type(e) is not ElementId or type(e.index) is not int:
            return False
        kind = e.kind
        if kind == EDGE:
            return 0 <= e.index < len(self.edges)
        return kind == ARC and 0 <= e.index < len(self.arcs)

    def check_element(self, e) -> ElementId:
        if self._known(e):
            return e
        if not self.is_valid(e):
            raise UsageError(f"invalid element id {e!r} for this graph")
        return ElementId(*e)

    def check_set(self, F: Iterable) -> frozenset:
        if type(F) is frozenset and all(map(self._known, F)):
            return F
        return frozenset(self.check_element(e) for e in F)

    def endpoints(self, e: ElementId) -> tuple:
        """``(u, v)`` for an edge, ``(tail, head)`` for an arc."""
        return self.edges[e.index] if e.kind == EDGE else self.arcs[e.index]

    def tail(self, a: ElementId) -> int:
        return self.arcs[a.index][0]

    def head(self, a: ElementId) -> int:
        return self.arcs[a.index][1]

    def mask(self, F: Iterable) -> int:
        m = 0
        for e in F:
            m |= 1 << self.position(e)
        return m

    def from_mask(self, mask: int) -> frozenset:
        out = []
        pos = 0
        while mask:
            if mask & 1:
                out.append(self.element_at(pos))
            mask >>= 1
            pos += 1
        return frozenset(out)

    def sorted(self, F: Iterable) -> list:
        return sorted(F, key=self.position)

    @cached_property
    def incident_edges(self) -> tuple:
        """Per vertex, the edge ids touching it in index order."""
        inc = [[] for _ in self.vertices]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(ElementId(EDGE, i))
            inc[v].append(ElementId(EDGE, i))
        return tuple(tuple(x) for x in inc)

    @cached_property
    def kernel_arrays(self) -> tuple:
        """``(tails, heads, is_edge)`` lists indexed by global position."""
        tails, heads, is_edge = [], [], []
        for u, v in self.edges:
            tails.append(u)
            heads.append(v)
            is_edge.append(1)
        for t, h in self.arcs:
            tails.append(t)
            heads.append(h)
            is_edge.append(0)
        return tails, heads, is_edge


def edges_of(F: Iterable) -> frozenset:
    return frozenset(e for e in F if e.kind == EDGE)


def arcs_of(F: Iterable) -> frozenset:
    return frozenset(e for e in F if e.kind == ARC)


def heads(g: MixedGraph, e) -> frozenset:
    e = g.check_element(e)
    u, v = g.endpoints(e)
    return frozenset((u, v)) if e.kind == EDGE else frozenset((v,))


def _heads_unchecked(g: MixedGraph, e: ElementId):
    u, v = g.endpoints(e)
    return (u, v) if e.kind == EDGE else (v,)


def covered(g: MixedGraph, F) -> frozenset:
    F = g.check_set(F)
    out = set()
    for e in F:
        out.update(_heads_unchecked(g, e))
    return frozenset(out)


def cover_counts(g: MixedGraph, F) -> dict:
    F = g.check_set(F)
    counts = dict.fromkeys(g.vertices, 0)
    for e in F:
        for v in _heads_unchecked(g, e):
            counts[v] += 1
    return counts


class _DisjointSet:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def underlying_has_cycle(g: MixedGraph, F) -> bool:
    F = g.check_set(F)
    ds = _DisjointSet(g.num_vertices)
    for e in g.sorted(F):
        u, v = g.endpoints(e)
        if not ds.union(u, v):
            return True
    return False


def _require_arcs(F, what="set") -> None:
    for e in F:
        if e.kind != ARC:
            raise UsageError(f"{what} must contain only arcs, found edge {e!r}")


def reachable_from(g: MixedGraph, B, sources) -> frozenset:
    """Vertices reachable from ``sources`` along arcs of ``B`` (length 0 included)."""
    B = g.check_set(B)
    _require_arcs(B)
    out_arcs = [[] for _ in g.vertices]
    for a in B:
        t, h = g.arcs[a.index]
        out_arcs[t].append(h)
    seen = set()
    for s in sources:
        if not 0 <= s < g.num_vertices:
            raise UsageError(f"vertex {s!r} out of range")
        seen.add(s)
    queue = deque(sorted(seen))
    while queue:
        x = queue.popleft()
        for y in out_arcs[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def strong_components(n: int, arc_pairs) -> list:
    """Strongly connected components of the digraph on ``0..n-1`` (iterative Tarjan).

    Returns a list of vertex lists; every vertex appears in exactly one.
    """
    succ = [[] for _ in range(n)]
    for t, h in arc_pairs:
        succ[t].append(h)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack, comps = [], []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(succ[v]):
                work[-1] = (v, i + 1)
                w = succ[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp.append(w)
                        if w == v:
                            break
                    comps.append(sorted(comp))
    return comps


def source_components(g: MixedGraph, D) -> list:
    """Strong components of ``(V, D)`` with no arc of ``D`` entering them.

    Sorted by smallest vertex.
    """
    D = g.check_set(D)
    _require_arcs(D)
    pairs = [g.arcs[a.index] for a in D]
    comps = strong_components(g.num_vertices, pairs)
    comp_of = [0] * g.num_vertices
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    entered = set()
    for t, h in pairs:
        if comp_of[t] != comp_of[h]:
            entered.add(comp_of[h])
    result = [frozenset(c) for ci, c in enumerate(comps) if ci not in entered]
    result.sort(key=min)
    return result
