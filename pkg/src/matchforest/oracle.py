"""Exhaustive ground truth at desk scale, plus seeded random instances.

Structure families are tabulated over all ``2**m`` element subsets by the
bitmask kernels; partitions and packings are searched over that table.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement, permutations

from . import kernels
from .errors import BudgetExceeded, UsageError
from .graph_core import ElementId, MixedGraph
from .partition import part_sizes
from .structures import StructureKind, minimalize_mec

_KERNEL_KIND = {
    StructureKind.MATCHING: kernels.MATCHING,
    StructureKind.BRANCHING: kernels.BRANCHING,
    StructureKind.MATCHING_FOREST: kernels.MF,
    StructureKind.PERFECT_MATCHING_FOREST: kernels.PMF,
    StructureKind.MIXED_EDGE_COVER: kernels.MEC,
    StructureKind.MIXED_COVERING_FOREST: kernels.MCF,
}


@dataclass(frozen=True)
class OracleBudget:
    max_vertices: int = 16
    max_elements: int = 20
    max_k: int = 4
    time_budget: float | None = None  # seconds

    def __post_init__(self):
        if min(self.max_vertices, self.max_elements, self.max_k) <= 0:
            raise UsageError("oracle budget limits must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise UsageError("time budget must be positive")

    def check(self, g: MixedGraph, k: int = 1) -> None:
        if g.num_vertices > self.max_vertices:
            raise BudgetExceeded(f"{g.num_vertices} vertices exceed the oracle budget of {self.max_vertices}")
        if g.num_elements > self.max_elements:
            raise BudgetExceeded(f"{g.num_elements} elements exceed the oracle budget of {self.max_elements}")
        if k > self.max_k:
            raise BudgetExceeded(f"k={k} exceeds the oracle budget of {self.max_k}")


DEFAULT_BUDGET = OracleBudget()


class _Clock:
    def __init__(self, budget: OracleBudget):
        self.deadline = None if budget.time_budget is None else time.monotonic() + budget.time_budget

    def tick(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded("oracle time budget exhausted")


@lru_cache(maxsize=256)
def _table(g: MixedGraph, kind: StructureKind):
    tails, heads, is_edge = g.kernel_arrays
    return kernels.structure_table(_KERNEL_KIND[kind], g.num_vertices, tails, heads, is_edge)


def structure_table(g: MixedGraph, kind, budget: OracleBudget = DEFAULT_BUDGET):
    """Validity table indexed by element mask (see ``MixedGraph.mask``)."""
    budget.check(g)
    return _table(g, StructureKind.parse(kind))


def enumerate_structures(g: MixedGraph, kind, budget: OracleBudget = DEFAULT_BUDGET):
    """Yield every element subset of the given kind, in mask order."""
    table = structure_table(g, kind, budget)
    clock = _Clock(budget)
    for mask, ok in enumerate(table):
        if ok:
            clock.tick()
            yield g.from_mask(mask)


def count_structures(g: MixedGraph, kind, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    return sum(structure_table(g, kind, budget))


def enumerate_partitions(g: MixedGraph, k: int, kind, budget: OracleBudget = DEFAULT_BUDGET, limit: int = 0):
    """Yield ordered k-tuples of structures partitioning all elements."""
    if k < 1:
        raise UsageError("k must be at least 1")
    budget.check(g, k)
    table = structure_table(g, kind, budget)
    clock = _Clock(budget)
    for masks in kernels.search_partitions(table, g.num_elements, k, True, limit):
        clock.tick()
        yield tuple(g.from_mask(x) for x in masks)


def unordered_partitions(g: MixedGraph, k: int, kind, budget: OracleBudget = DEFAULT_BUDGET):
    """Partitions up to reordering of the parts."""
    seen = set()
    for parts in enumerate_partitions(g, k, kind, budget):
        key = tuple(sorted(g.mask(F) for F in parts))
        if key not in seen:
            seen.add(key)
            yield parts


def find_partition(g: MixedGraph, k: int, kind, budget: OracleBudget = DEFAULT_BUDGET):
    """Some partition into k structures, or None."""
    for parts in enumerate_partitions(g, k, kind, budget, limit=1):
        return parts
    return None


def find_packing(g: MixedGraph, k: int, kind, budget: OracleBudget = DEFAULT_BUDGET):
    """Some k pairwise disjoint structures (not necessarily covering E | A), or None."""
    if k < 1:
        raise UsageError("k must be at least 1")
    budget.check(g, k)
    table = structure_table(g, kind, budget)
    for masks in kernels.search_partitions(table, g.num_elements, k, False, 1):
        return tuple(g.from_mask(x) for x in masks)
    return None


@dataclass(frozen=True)
class BestBounds:
    edge: int | None
    arc: int | None
    total: int | None
    achievable: frozenset  # all (edge gap, arc gap, total gap) triples that occur

    def jointly(self, edge=None, arc=None, total=None) -> bool:
        """Is there a partition meeting all the given gap limits at once?"""
        return any(
            (edge is None or e <= edge) and (arc is None or a <= arc) and (total is None or t <= total)
            for e, a, t in self.achievable
        )


def gap_triple(parts) -> tuple:
    sizes = [part_sizes(F) for F in parts]
    return tuple(max(s[c] for s in sizes) - min(s[c] for s in sizes) for c in range(3))


def best_bounds(g: MixedGraph, k: int, kind, budget: OracleBudget = DEFAULT_BUDGET) -> BestBounds:
    """Per-criterion minimum of the largest pairwise gap over all partitions."""
    triples = {gap_triple(p) for p in enumerate_partitions(g, k, kind, budget)}
    if not triples:
        return BestBounds(None, None, None, frozenset())
    return BestBounds(
        min(t[0] for t in triples), min(t[1] for t in triples), min(t[2] for t in triples), frozenset(triples)
    )


# random instances


def _pair(rng, n):
    u, v = rng.sample(range(n), 2)
    return u, v


def random_mixed_graph(rng: random.Random, n: int, num_edges: int, num_arcs: int) -> MixedGraph:
    if n < 2 and num_edges + num_arcs:
        raise UsageError("need at least two vertices for any edge or arc")
    edges = tuple(tuple(sorted(_pair(rng, n))) for _ in range(num_edges))
    arcs = tuple(_pair(rng, n) for _ in range(num_arcs))
    return MixedGraph(n, edges, arcs)


def random_small_graph(rng: random.Random, max_vertices=6, max_elements=9) -> MixedGraph:
    n = rng.randint(2, max_vertices)
    m = rng.randint(1, max_elements)
    ne = rng.randint(0, m)
    return random_mixed_graph(rng, n, ne, m - ne)


def _random_mf_pieces(rng, n, edge_bias=0.5):
    """A random matching forest as (edges, arcs) vertex pairs."""
    order = list(range(n))
    rng.shuffle(order)
    arcs, roots = [], []
    for pos, v in enumerate(order):
        if pos and rng.random() < edge_bias:
            arcs.append((rng.choice(order[:pos]), v))
        else:
            roots.append(v)
    rng.shuffle(roots)
    edges = []
    for i in range(0, len(roots) - 1, 2):
        if rng.random() < 0.7:
            edges.append(tuple(sorted((roots[i], roots[i + 1]))))
    return edges, arcs


def _random_mec_pieces(rng, n):
    """A random mixed edge cover as (edges, arcs) vertex pairs."""
    order = list(range(n))
    rng.shuffle(order)
    seeds = max(2, min(n, rng.randint(2, max(2, n // 2 + 1))))
    edges = []
    base = order[:seeds]
    for i in range(1, seeds):
        j = rng.randrange(i)
        edges.append(tuple(sorted((base[i], base[j]))) if rng.random() < 0.6 else tuple(sorted((base[i], base[0]))))
    arcs = []
    for pos in range(seeds, n):
        arcs.append((rng.choice(order[:pos]), order[pos]))
    return edges, arcs


def _assemble(n, pieces, shuffle_rng):
    tagged = []
    for part, (edges, arcs) in enumerate(pieces):
        tagged += [("E", part, e) for e in edges] + [("A", part, a) for a in arcs]
    shuffle_rng.shuffle(tagged)
    edges = [t for t in tagged if t[0] == "E"]
    arcs = [t for t in tagged if t[0] == "A"]
    g = MixedGraph(n, tuple(t[2] for t in edges), tuple(t[2] for t in arcs))
    parts = [set() for _ in pieces]
    for i, t in enumerate(edges):
        parts[t[1]].add(ElementId.edge(i))
    for i, t in enumerate(arcs):
        parts[t[1]].add(ElementId.arc(i))
    return g, tuple(frozenset(p) for p in parts)


def planted_partition(rng: random.Random, n: int, k: int, kind, max_elements: int | None = None):
    """A graph together with a known partition into k structures of ``kind``
    (matching forests or mixed edge covers)."""
    kind = StructureKind.parse(kind)
    for _ in range(1000):
        if kind is StructureKind.MATCHING_FOREST:
            pieces = [_random_mf_pieces(rng, n, rng.uniform(0.2, 0.8)) for _ in range(k)]
        elif kind is StructureKind.MIXED_EDGE_COVER:
            pieces = [_random_mec_pieces(rng, n) for _ in range(k)]
            for e, a in pieces:
                if rng.random() < 0.5:
                    e.append(tuple(sorted(_pair(rng, n))))
                if rng.random() < 0.5:
                    a.append(_pair(rng, n))
        else:
            raise UsageError(f"no planted generator for {kind.value}")
        size = sum(len(e) + len(a) for e, a in pieces)
        if max_elements is None or size <= max_elements:
            return _assemble(n, pieces, rng)
    raise UsageError("could not plant an instance within the element limit")


def planted_packing(rng: random.Random, n: int, k: int, extra: int = 2, max_elements: int | None = None):
    """A graph containing k disjoint mixed covering forests plus ``extra``
    random elements; returns ``(graph, forests)``."""
    for _ in range(1000):
        pieces = [_random_mec_pieces(rng, n) for _ in range(k)]
        pieces.append(([], []))
        for _ in range(extra):
            if rng.random() < 0.5:
                pieces[-1][0].append(tuple(sorted(_pair(rng, n))))
            else:
                pieces[-1][1].append(_pair(rng, n))
        size = sum(len(e) + len(a) for e, a in pieces)
        if max_elements is None or size <= max_elements:
            g, parts = _assemble(n, pieces, rng)
            return g, tuple(minimalize_mec(g, F) for F in parts[:k])
    raise UsageError("could not plant an instance within the element limit")


def planted_bibranchings(rng: random.Random, n: int, k: int, max_arcs: int | None = None):
    """A digraph with a bipartition (V1, V2), no V2 -> V1 arcs, and k
    disjoint bibranchings covering all arcs. Returns ``(n, arcs, V1, parts)``
    where parts are lists of arc indices."""
    for _ in range(1000):
        verts = list(range(n))
        rng.shuffle(verts)
        cut = rng.randint(1, n - 1)
        V1, V2 = sorted(verts[:cut]), sorted(verts[cut:])
        tagged = []
        for part in range(k):
            reached = []
            for v in rng.sample(V2, len(V2)):
                src = rng.choice(V1 + reached) if reached else rng.choice(V1)
                tagged.append((part, (src, v)))
                reached.append(v)
            linked = []
            for v in rng.sample(V1, len(V1)):
                dst = rng.choice(V2 + linked) if linked and rng.random() < 0.5 else rng.choice(V2)
                tagged.append((part, (v, dst)))
                linked.append(v)
        if max_arcs is not None and len(tagged) > max_arcs:
            continue
        rng.shuffle(tagged)
        arcs = tuple(a for _, a in tagged)
        parts = [[i for i, (p, _) in enumerate(tagged) if p == part] for part in range(k)]
        return n, arcs, frozenset(V1), parts
    raise UsageError("could not plant a bibranching instance within the arc limit")


def _canonical(n, edges, arcs, perms):
    best = None
    for p in perms:
        key = (
            tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in edges)),
            tuple(sorted((p[t], p[h]) for t, h in arcs)),
        )
        if best is None or key < best:
            best = key
    return best


def all_small_graphs(max_vertices=4, max_elements=5):
    """Every mixed graph with at most the given numbers of vertices and
    elements, one per isomorphism class (vertices 0..n-1, elements sorted)."""
    for n in range(0, max_vertices + 1):
        perms = list(permutations(range(n)))
        edge_types = [(u, v) for u in range(n) for v in range(u + 1, n)]
        arc_types = [(t, h) for t in range(n) for h in range(n) if t != h]
        types = [("E", x) for x in edge_types] + [("A", x) for x in arc_types]
        seen = set()
        for m in range(0, max_elements + 1):
            for combo in combinations_with_replacement(types, m):
                edges = [x for kind, x in combo if kind == "E"]
                arcs = [x for kind, x in combo if kind == "A"]
                key = _canonical(n, edges, arcs, perms)
                if key in seen:
                    continue
                seen.add(key)
                yield MixedGraph(n, key[0], key[1])


def union_branching_digraphs(max_vertices=5, max_arcs=6):
    """Every digraph on up to ``max_vertices`` vertices with at most
    ``max_arcs`` arcs, in-degree at most 2 and arc multiplicity at most 2.
    Relabelings are cut down by requiring non-increasing in-degrees."""
    for n in range(1, max_vertices + 1):
        pairs = [(t, h) for t in range(n) for h in range(n) if t != h]
        for m in range(0, max_arcs + 1):
            for arcs in combinations_with_replacement(pairs, m):
                if any(arcs[i] == arcs[i + 2] for i in range(m - 2)):
                    continue
                indeg = [0] * n
                for _, h in arcs:
                    indeg[h] += 1
                if max(indeg) > 2:
                    continue
                if indeg != sorted(indeg, reverse=True):
                    continue
                yield n, arcs


__all__ = [
    "BestBounds",
    "all_small_graphs",
    "DEFAULT_BUDGET",
    "OracleBudget",
    "best_bounds",
    "count_structures",
    "enumerate_partitions",
    "enumerate_structures",
    "find_packing",
    "find_partition",
    "gap_triple",
    "planted_bibranchings",
    "planted_packing",
    "planted_partition",
    "random_mixed_graph",
    "random_small_graph",
    "structure_table",
    "union_branching_digraphs",
    "unordered_partitions",
]
