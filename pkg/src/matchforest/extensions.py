"""Packing mixed covering forests, and equitable partitions into
bibranchings through their correspondence with mixed edge covers."""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError, GraphValidationError
from .graph_core import ElementId, MixedGraph, reachable_from
from .mec_equalize import equalize_pair_mec, equitable_partition_mec
from .mf_equalize import _check_partition
from .partition import EqualizeMode, PartitionReport, two_phase
from .structures import is_mixed_covering_forest, is_mixed_edge_cover, minimalize_mec


def pack_covering_forests(g: MixedGraph, forests, mode=EqualizeMode.TOTAL_FIRST) -> PartitionReport:
    """Rebalance k disjoint mixed covering forests.

    Runs the cover equalization and replaces any part that stops being a
    forest by a minimal cover inside it. Elements may be dropped; there is
    no final redistribution.
    """
    mode = EqualizeMode.parse(mode)
    parts, _ = _check_partition(g, forests, is_mixed_covering_forest, "mixed covering forest")
    if len(parts) == 1:
        return PartitionReport(g, tuple(parts), "mcf", mode)

    def pair_fn(A, B):
        A, B = equalize_pair_mec(g, A, B, mode)
        return tuple(F if is_mixed_covering_forest(g, F) else minimalize_mec(g, F) for F in (A, B))

    out, steps, restarts = two_phase(parts, mode, pair_fn)
    report = PartitionReport(g, tuple(out), "mcf", mode, steps, restarts)
    assert all(is_mixed_covering_forest(g, F) for F in out)
    seen = set()
    for F in out:
        assert not seen & F
        seen |= F
    assert report.within_bounds(), report.gaps()
    return report


@dataclass(frozen=True)
class PartitionableDigraph:
    """A digraph with a vertex bipartition and no arc from V2 into V1."""

    num_vertices: int
    arcs: tuple
    V1: frozenset

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(tuple(a) for a in self.arcs))
        object.__setattr__(self, "V1", frozenset(self.V1))
        if any(not 0 <= v < self.num_vertices for v in self.V1):
            raise GraphValidationError("V1 contains an out-of-range vertex")
        self.graph  # validates arcs
        for t, h in self.arcs:
            if t not in self.V1 and h in self.V1:
                raise GraphValidationError(f"arc ({t}, {h}) goes from V2 to V1")

    @property
    def V2(self) -> frozenset:
        return frozenset(range(self.num_vertices)) - self.V1

    @property
    def graph(self) -> MixedGraph:
        return MixedGraph(self.num_vertices, (), self.arcs)

    def is_crossing(self, a: ElementId) -> bool:
        t, h = self.arcs[a.index]
        return t in self.V1 and h not in self.V1


def is_bibranching(d: PartitionableDigraph, F) -> bool:
    """Every V1 vertex reaches V2 and every V2 vertex is reached from V1,
    along arcs of ``F``."""
    g = d.graph
    F = g.check_set(F)
    reached = reachable_from(g, F, d.V1)
    if not d.V2 <= reached:
        return False
    reverse = MixedGraph(d.num_vertices, (), tuple((h, t) for t, h in d.arcs))
    backward = reachable_from(reverse, F, d.V2)
    return d.V1 <= backward


@dataclass(frozen=True)
class Correspondence:
    forward: dict = field(hash=False)  # digraph arc -> image element
    backward: dict = field(hash=False)

    def to_image(self, F) -> frozenset:
        return frozenset(self.forward[a] for a in F)

    def to_digraph(self, F) -> frozenset:
        return frozenset(self.backward[e] for e in F)


def bibranching_to_mixed(d: PartitionableDigraph):
    """Crossing arcs become edges, arcs inside V1 are reversed, arcs inside
    V2 are kept. Returns ``(graph, correspondence)``."""
    edges, arcs, forward = [], [], {}
    for i, (t, h) in enumerate(d.arcs):
        a = ElementId.arc(i)
        if t in d.V1 and h not in d.V1:
            forward[a] = ElementId.edge(len(edges))
            edges.append((t, h))
        elif t in d.V1:
            forward[a] = ElementId.arc(len(arcs))
            arcs.append((h, t))
        else:
            forward[a] = ElementId.arc(len(arcs))
            arcs.append((t, h))
    image = MixedGraph(d.num_vertices, tuple(edges), tuple(arcs))
    return image, Correspondence(forward, {v: k for k, v in forward.items()})


@dataclass
class BibranchingReport(PartitionReport):
    digraph: PartitionableDigraph | None = None
    digraph_parts: tuple = ()

    def to_dict(self) -> dict:
        out = super().to_dict()
        out["image_parts"] = out.pop("parts")
        out["parts"] = [[f"A{a.index}" for a in sorted(F, key=lambda x: x.index)] for F in self.digraph_parts]
        out["crossing"] = [s[0] for s in self.sizes]
        out["internal"] = [s[1] for s in self.sizes]
        return out


def equitable_partition_bibranchings(d: PartitionableDigraph, parts, mode=EqualizeMode.TOTAL_FIRST):
    """Rebalance a partition of all arcs into k bibranchings; sizes are
    reported as crossing arcs (edge size), internal arcs (arc size), total."""
    mode = EqualizeMode.parse(mode)
    g = d.graph
    parts = [g.check_set(F) for F in parts]
    parts, union = _check_partition(g, parts, lambda _, F: is_bibranching(d, F), "bibranching")
    if union != g.all_elements:
        raise DomainError("initial parts must cover every arc")
    image, corr = bibranching_to_mixed(d)
    mapped = [corr.to_image(F) for F in parts]
    assert all(is_mixed_edge_cover(image, F) for F in mapped)
    rep = equitable_partition_mec(image, mapped, mode)
    back = tuple(corr.to_digraph(F) for F in rep.parts)
    for F, Fi in zip(back, rep.parts):
        assert is_bibranching(d, F)
        assert sum(d.is_crossing(a) for a in F) == len([e for e in Fi if e.is_edge])
    return BibranchingReport(
        image, rep.parts, "bibranching", mode, rep.steps, rep.restarts, digraph=d, digraph_parts=back
    )


__all__ = [
    "BibranchingReport",
    "Correspondence",
    "PartitionableDigraph",
    "bibranching_to_mixed",
    "equitable_partition_bibranchings",
    "is_bibranching",
    "pack_covering_forests",
]
