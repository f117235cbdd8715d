"""Equalizing disjoint matching forests.

A pair ``F1, F2`` is rebalanced by exchanging along alternating paths of an
auxiliary graph in which each root left uncovered by the matching gets a
pendant "bullet" edge. The k-way version runs the two-phase driver in
:mod:`matchforest.partition` on top of the pair step.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import _altpaths
from ._altpaths import AuxEdge, AuxGraph, decompose_alternating
from .errors import DomainError
from .graph_core import MixedGraph, arcs_of, covered, edges_of
from .partition import EqualizeMode, PartitionReport, part_sizes, two_phase
from .structures import is_matching_forest, root_set

# type -> (end-edge classes, m, f); "M" = matching edge, "B" = bullet edge
MF_PATH_TABLE = {
    1: (("B1", "B1"), -1, -1),
    2: (("M1", "B1"), 0, -1),
    3: (("M1", "M1"), 1, -1),
    4: (("B2", "B2"), 1, 1),
    5: (("M2", "B2"), 0, 1),
    6: (("M2", "M2"), -1, 1),
    7: (("B1", "B2"), 0, 0),
    8: (("M1", "B2"), 1, 0),
    9: (("B1", "M2"), -1, 0),
    10: (("M1", "M2"), 0, 0),
}

_BY_ENDS = {frozenset(ends) if ends[0] != ends[1] else frozenset([ends[0]]): t
            for t, (ends, _, _) in MF_PATH_TABLE.items()}

# operation -> (single-path types in order of preference, two-path fallback)
MF_OPERATIONS = {
    1: ((4, 8), (3, 5)),
    2: ((3, 8), (2, 4)),
    3: ((4, 5), (6, 8)),
    4: ((5, 6), (4, 9)),
}


@dataclass
class AuxGraphMF(AuxGraph):
    M1: frozenset = frozenset()
    M2: frozenset = frozenset()


@dataclass(frozen=True)
class PathClassMF:
    type: int
    m: int
    f: int


def _check_pair(g, F1, F2):
    F1, F2 = g.check_set(F1), g.check_set(F2)
    if F1 & F2:
        raise DomainError("the two matching forests must be disjoint")
    if not is_matching_forest(g, F1) or not is_matching_forest(g, F2):
        raise DomainError("both parts must be matching forests")
    return F1, F2


def build_aux_mf(g: MixedGraph, F1, F2) -> AuxGraphMF:
    F1, F2 = _check_pair(g, F1, F2)
    M1, M2 = edges_of(F1), edges_of(F2)
    B1, B2 = arcs_of(F1), arcs_of(F2)
    R1, R2 = root_set(g, B1), root_set(g, B2)
    rep, pairs = _altpaths.contract_sources(g, B1, B2, R1, R2)
    names = _altpaths.base_names(g, rep)

    edges = []
    for side, M in ((1, M1), (2, M2)):
        for e in g.sorted(M):
            u, v = g.endpoints(e)
            edges.append(AuxEdge(side, False, e, (rep[u], rep[v]), frozenset((u, v))))
    free1, free2 = R1 - covered(g, M1), R2 - covered(g, M2)
    for v in sorted(free1 | free2):
        node = len(names)
        names.append(f"{v}*")
        for side, free in ((1, free1), (2, free2)):
            if v in free:
                edges.append(AuxEdge(side, True, None, (node, rep[v]), frozenset((v,))))

    aux = AuxGraphMF(
        graph=g, F1=F1, F2=F2, B1=B1, B2=B2, R1=R1, R2=R2,
        num_nodes=len(names), node_names=tuple(names), edges=tuple(edges),
        contractions=pairs, representative=rep, M1=M1, M2=M2,
    )
    _altpaths.check_matchings(aux)
    for side, F in ((1, F1), (2, F2)):
        assert len(F) == g.num_vertices - len(aux.side_edges(side))
    return aux


def _end_class(e: AuxEdge) -> str:
    return ("B" if e.bullet else "M") + str(e.side)


def path_values_mf(aux: AuxGraph, path) -> tuple:
    """(m, f) computed directly from the path's edges."""
    m = f = 0
    for i in path:
        e = aux.edges[i]
        sign = 1 if e.side == 1 else -1
        if not e.bullet:
            m += sign
        f -= sign
    return m, f


def classify_path_mf(aux: AuxGraph, path) -> PathClassMF:
    first, last = _altpaths.path_end_edges(aux, path)
    if len(path) == 1 and first.bullet:
        # a lone bullet edge has one real end, so it behaves like types 2/5
        t = 2 if first.side == 1 else 5
    else:
        a, b = _end_class(first), _end_class(last)
        t = _BY_ENDS[frozenset((a, b))]
    _, m, f = MF_PATH_TABLE[t]
    assert path_values_mf(aux, path) == (m, f), f"path values disagree with type {t}"
    return PathClassMF(t, m, f)


def apply_paths_mf(g: MixedGraph, F1, F2, paths, aux: AuxGraphMF | None = None):
    """Exchange along the given decomposition paths; returns ``(F1p, F2p)``."""
    if aux is None:
        aux = build_aux_mf(g, F1, F2)
    flipped = _altpaths.check_selection(aux, paths)
    M1p, M2p, B1p, B2p, _, _ = _altpaths.flip_and_exchange(aux, flipped)
    F1p, F2p = M1p | B1p, M2p | B2p

    sm = sum(path_values_mf(aux, p)[0] for p in paths)
    sf = sum(path_values_mf(aux, p)[1] for p in paths)
    (m1, _, t1), (m2, _, t2) = part_sizes(aux.F1), part_sizes(aux.F2)
    (n1, _, u1), (n2, _, u2) = part_sizes(F1p), part_sizes(F2p)
    assert n1 - n2 == m1 - m2 - 2 * sm, "edge-size identity violated"
    assert u1 - u2 == t1 - t2 - 2 * sf, "total-size identity violated"
    assert F1p | F2p == aux.F1 | aux.F2 and not F1p & F2p
    assert is_matching_forest(g, F1p) and is_matching_forest(g, F2p)
    return F1p, F2p


def _diffs(F1, F2):
    (m1, _, t1), (m2, _, t2) = part_sizes(F1), part_sizes(F2)
    return m1 - m2, t1 - t2


def select_paths(classified, singles, pair):
    """First path of a preferred single type, else one path of each pair type."""
    by_type = {}
    for path, cls in classified:
        by_type.setdefault(cls.type, []).append(path)
    for t in singles:
        if by_type.get(t):
            return [by_type[t][0]]
    a, b = pair
    if by_type.get(a) and by_type.get(b):
        return [by_type[a][0], by_type[b][0]]
    raise AssertionError(f"no paths realize the operation (types present: {sorted(by_type)})")


def run_operation_mf(g, F1, F2, op: int):
    aux = build_aux_mf(g, F1, F2)
    paths, _ = decompose_alternating(aux)
    classified = [(p, classify_path_mf(aux, p)) for p in paths]
    assert sum(c.m for _, c in classified) == _diffs(F1, F2)[0]
    assert sum(c.f for _, c in classified) == _diffs(F1, F2)[1]
    singles, pair = MF_OPERATIONS[op]
    chosen = select_paths(classified, singles, pair)
    return apply_paths_mf(g, F1, F2, chosen, aux)


def _family_step(g, F1, F2, family, run_operation):
    """One edge-family (ops 1/2) or total-family (ops 3/4) step; the side
    with the larger key size is treated as side 1."""
    dm, df = _diffs(F1, F2)
    key = dm if family == "edge" else df
    assert key != 0
    swap = key < 0
    A, B = (F2, F1) if swap else (F1, F2)
    dm, df = (-dm, -df) if swap else (dm, df)
    if family == "edge":
        op = 1 if df >= 0 else 2
    else:
        op = 3 if dm >= 0 else 4
    A2, B2 = run_operation(g, A, B, op)
    ndm, ndf = _diffs(A2, B2)
    if family == "edge":
        assert ndm == dm - 2 and ndf - df in ((0, -2) if op == 1 else (0, 2))
    else:
        assert ndf == df - 2 and ndm - dm in ((0, -2) if op == 3 else (0, 2))
    return (B2, A2) if swap else (A2, B2)


def pair_loop(g, F1, F2, mode, run_operation, diffs=_diffs):
    """The pair equalization loop shared by both cover types."""
    mode = EqualizeMode.parse(mode)
    primary, secondary = ("total", "edge") if mode is EqualizeMode.TOTAL_FIRST else ("edge", "total")

    def gap(name, F1, F2):
        dm, df = diffs(F1, F2)
        return abs(dm if name == "edge" else df)

    while True:
        if gap(secondary, F1, F2) > 2:
            F1, F2 = _family_step(g, F1, F2, secondary, run_operation)
        elif gap(primary, F1, F2) > 1:
            F1, F2 = _family_step(g, F1, F2, primary, run_operation)
        else:
            break
    if gap(secondary, F1, F2) == 2 and gap(primary, F1, F2) == 1:
        F1, F2 = _family_step(g, F1, F2, secondary, run_operation)
    assert gap(primary, F1, F2) <= 1 and gap(primary, F1, F2) + gap(secondary, F1, F2) <= 2
    return F1, F2


def equalize_pair_mf(g: MixedGraph, F1, F2, mode=EqualizeMode.TOTAL_FIRST):
    """Repartition ``F1 | F2`` into two matching forests with balanced sizes.

    TotalFirst: total gap at most 1 and total gap plus edge gap at most 2.
    EdgeFirst: the same with the roles of the two criteria swapped.
    """
    F1, F2 = _check_pair(g, F1, F2)
    return pair_loop(g, F1, F2, mode, run_operation_mf)


def _check_partition(g, parts, predicate, what):
    parts = [g.check_set(F) for F in parts]
    if not parts:
        raise DomainError("need at least one part")
    seen = set()
    for F in parts:
        if seen & F:
            raise DomainError("initial parts must be disjoint")
        seen |= F
        if not predicate(g, F):
            raise DomainError(f"every initial part must be a {what}")
    return parts, frozenset(seen)


def equitable_partition_mf(g: MixedGraph, parts, mode=EqualizeMode.TOTAL_FIRST) -> PartitionReport:
    """Rebalance a partition of all elements into k matching forests."""
    mode = EqualizeMode.parse(mode)
    parts, union = _check_partition(g, parts, is_matching_forest, "matching forest")
    if union != g.all_elements:
        raise DomainError("initial parts must cover every edge and arc")

    def pair_fn(A, B):
        out = equalize_pair_mf(g, A, B, mode)
        assert out[0] | out[1] == A | B
        return out

    out, steps, restarts = two_phase(parts, mode, pair_fn)
    report = PartitionReport(g, tuple(out), "mf", mode, steps, restarts)
    assert frozenset().union(*out) == g.all_elements
    assert all(is_matching_forest(g, F) for F in out)
    assert report.within_bounds(), report.gaps()
    return report


__all__ = [
    "AuxGraphMF",
    "MF_OPERATIONS",
    "MF_PATH_TABLE",
    "PathClassMF",
    "apply_paths_mf",
    "build_aux_mf",
    "classify_path_mf",
    "decompose_alternating",
    "equalize_pair_mf",
    "equitable_partition_mf",
]
