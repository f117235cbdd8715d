"""Equalizing disjoint mixed edge covers.

Each cover is first made inclusion-minimal, so its edges form stars whose
endpoints are exactly the roots of its arcs. Every root picks one incident
star edge; edges picked from both ends become full auxiliary edges, edges
picked from one end become pendant edges to a fresh split node. Exchanging
along alternating paths of that auxiliary graph rebalances the pair, and
uncovered leftovers are dealt out at the end of the k-way run.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import _altpaths
from ._altpaths import AuxEdge, AuxGraph, decompose_alternating
from .errors import DomainError
from .graph_core import MixedGraph, arcs_of, covered, edges_of
from .mf_equalize import _check_partition, _family_step, select_paths
from .partition import EqualizeMode, PartitionReport, part_sizes, two_phase
from .structures import is_minimal_mec, is_mixed_edge_cover, minimalize_mec, root_set

# type -> (end-edge classes, n, f); "O" = edge chosen by both ends, "B" = by one end
MEC_PATH_TABLE = {
    1: (("B1", "B1"), 1, 1),
    2: (("O1", "B1"), 1, 0),
    3: (("O1", "O1"), 1, -1),
    4: (("B2", "B2"), -1, -1),
    5: (("O2", "B2"), -1, 0),
    6: (("O2", "O2"), -1, 1),
    7: (("B1", "B2"), 0, 0),
    8: (("B1", "O2"), 0, 1),
    9: (("O1", "B2"), 0, -1),
    10: (("O1", "O2"), 0, 0),
}

_BY_ENDS = {frozenset(ends): t for t, (ends, _, _) in MEC_PATH_TABLE.items()}

MEC_OPERATIONS = {
    1: ((1, 2), (3, 8)),
    2: ((2, 3), (1, 9)),
    3: ((1, 8), (2, 6)),
    4: ((6, 8), (1, 5)),
}


def _pm(*pairs):
    out = {(0, 0)}
    for a, b in pairs:
        out |= {(a, b), (-a, -b)}
    return frozenset(out)


@dataclass(frozen=True)
class PairStateSet:
    """Admissible pairwise (edge-size gap, total-size gap) states."""

    states: frozenset

    def __contains__(self, item) -> bool:
        return tuple(item) in self.states

    def extended(self, *pairs) -> "PairStateSet":
        return PairStateSet(self.states | _pm(*pairs))


TOTAL_FIRST_STATES = PairStateSet(_pm((0, 1), (1, 0), (1, 1), (1, -1), (2, 0)))
EDGE_FIRST_STATES = PairStateSet(_pm((0, 1), (0, 2), (1, 0), (1, 1), (1, -1)))


def pair_states(mode) -> PairStateSet:
    mode = EqualizeMode.parse(mode)
    return TOTAL_FIRST_STATES if mode is EqualizeMode.TOTAL_FIRST else EDGE_FIRST_STATES


@dataclass(frozen=True)
class PiChoice:
    """For each root (edge-covered vertex), the incident cover edge it picks."""

    choice: dict = field(hash=False)

    def __getitem__(self, v):
        return self.choice.get(v)

    def chosen_by(self, e) -> tuple:
        return tuple(sorted(v for v, c in self.choice.items() if c == e))


def choose_pi(g: MixedGraph, F) -> PiChoice:
    F = g.check_set(F)
    if not is_minimal_mec(g, F):
        raise DomainError("choose_pi requires a minimal mixed edge cover")
    inc = {}
    for e in g.sorted(edges_of(F)):
        for v in g.endpoints(e):
            inc.setdefault(v, e)
    pi = PiChoice(inc)
    for e in edges_of(F):
        assert pi.chosen_by(e), "every cover edge is chosen by an endpoint"
    return pi


@dataclass
class AuxGraphMEC(AuxGraph):
    N1: frozenset = frozenset()
    N2: frozenset = frozenset()
    pi1: PiChoice | None = None
    pi2: PiChoice | None = None

    def full_edges(self, side):
        return [e for e in self.side_edges(side) if not e.bullet]

    def pendant_edges(self, side):
        return [e for e in self.side_edges(side) if e.bullet]


def _check_pair(g, F1, F2, minimal=True):
    F1, F2 = g.check_set(F1), g.check_set(F2)
    if F1 & F2:
        raise DomainError("the two covers must be disjoint")
    test = is_minimal_mec if minimal else is_mixed_edge_cover
    if not test(g, F1) or not test(g, F2):
        raise DomainError("both parts must be " + ("minimal " if minimal else "") + "mixed edge covers")
    return F1, F2


def build_aux_mec(g: MixedGraph, F1, F2) -> AuxGraphMEC:
    F1, F2 = _check_pair(g, F1, F2)
    N1, N2 = edges_of(F1), edges_of(F2)
    B1, B2 = arcs_of(F1), arcs_of(F2)
    R1, R2 = covered(g, N1), covered(g, N2)
    assert R1 == root_set(g, B1) and R2 == root_set(g, B2)
    pi1, pi2 = choose_pi(g, F1), choose_pi(g, F2)
    rep, pairs = _altpaths.contract_sources(g, B1, B2, R1, R2)
    names = _altpaths.base_names(g, rep)

    edges = []
    for side, N, pi in ((1, N1, pi1), (2, N2, pi2)):
        for e in g.sorted(N):
            u, v = g.endpoints(e)
            cu, cv = pi[u] == e, pi[v] == e
            if cu and cv:
                edges.append(AuxEdge(side, False, e, (rep[u], rep[v]), frozenset((u, v))))
                continue
            chooser, other = (u, v) if cu else (v, u)
            node = len(names)
            names.append(f"{other}/{side}/{e!r}")
            edges.append(AuxEdge(side, True, e, (rep[chooser], node), frozenset((chooser,))))

    aux = AuxGraphMEC(
        graph=g, F1=F1, F2=F2, B1=B1, B2=B2, R1=R1, R2=R2,
        num_nodes=len(names), node_names=tuple(names), edges=tuple(edges),
        contractions=pairs, representative=rep, N1=N1, N2=N2, pi1=pi1, pi2=pi2,
    )
    _altpaths.check_matchings(aux)
    for side, F, N, R in ((1, F1, N1, R1), (2, F2, N2, R2)):
        full, pend = len(aux.full_edges(side)), len(aux.pendant_edges(side))
        assert len(N) == full + pend
        assert len(R) == 2 * full + pend
        assert len(F) == g.num_vertices - full
    return aux


def _end_class(e: AuxEdge) -> str:
    return ("B" if e.bullet else "O") + str(e.side)


@dataclass(frozen=True)
class PathClassMEC:
    type: int
    n: int
    f: int


def path_values_mec(aux: AuxGraph, path) -> tuple:
    """(n, f) computed directly from the path's edges."""
    n = f = 0
    for i in path:
        e = aux.edges[i]
        sign = 1 if e.side == 1 else -1
        n += sign
        if not e.bullet:
            f -= sign
    return n, f


def classify_path_mec(aux: AuxGraph, path) -> PathClassMEC:
    first, last = _altpaths.path_end_edges(aux, path)
    if len(path) == 1 and first.bullet:
        t = 2 if first.side == 1 else 5
    else:
        t = _BY_ENDS[frozenset((_end_class(first), _end_class(last)))]
    _, n, f = MEC_PATH_TABLE[t]
    assert path_values_mec(aux, path) == (n, f), f"path values disagree with type {t}"
    return PathClassMEC(t, n, f)


def _diffs(F1, F2):
    (n1, _, t1), (n2, _, t2) = part_sizes(F1), part_sizes(F2)
    return n1 - n2, t1 - t2


def apply_paths_mec(g: MixedGraph, F1, F2, paths, aux: AuxGraphMEC | None = None):
    """Exchange along the given decomposition paths; returns ``(F1p, F2p)``.

    The graph walks behind auxiliary paths may revisit vertices, so the edge
    exchange is done on element identities only.
    """
    if aux is None:
        aux = build_aux_mec(g, F1, F2)
    flipped = _altpaths.check_selection(aux, paths)
    N1p, N2p, B1p, B2p, R1p, R2p = _altpaths.flip_and_exchange(aux, flipped)
    F1p, F2p = N1p | B1p, N2p | B2p

    sn = sum(path_values_mec(aux, p)[0] for p in paths)
    sf = sum(path_values_mec(aux, p)[1] for p in paths)
    dn, df = _diffs(aux.F1, aux.F2)
    ndn, ndf = _diffs(F1p, F2p)
    assert ndn == dn - 2 * sn, "edge-size identity violated"
    assert ndf == df - 2 * sf, "total-size identity violated"
    dr = len(aux.R1) - len(aux.R2)
    assert len(R1p) - len(R2p) == dr - 2 * sn + 2 * sf, "root-count identity violated"
    assert F1p | F2p == aux.F1 | aux.F2 and not F1p & F2p
    assert is_mixed_edge_cover(g, F1p) and is_mixed_edge_cover(g, F2p)
    return F1p, F2p


def run_operation_mec(g, F1, F2, op: int):
    aux = build_aux_mec(g, F1, F2)
    paths, _ = decompose_alternating(aux)
    classified = [(p, classify_path_mec(aux, p)) for p in paths]
    dn, df = _diffs(F1, F2)
    assert sum(c.n for _, c in classified) == dn
    assert sum(c.f for _, c in classified) == df
    singles, pair = MEC_OPERATIONS[op]
    return apply_paths_mec(g, F1, F2, select_paths(classified, singles, pair), aux)


def _triple(F1, F2):
    dn, df = _diffs(F1, F2)
    return len(F1 | F2), max(abs(dn), 2), abs(df)


def equalize_pair_mec(g: MixedGraph, F1, F2, mode=EqualizeMode.TOTAL_FIRST):
    """Two disjoint mixed edge covers inside ``F1 | F2`` with balanced sizes.

    The union may shrink because parts are made minimal along the way.
    """
    mode = EqualizeMode.parse(mode)
    F1, F2 = _check_pair(g, F1, F2, minimal=False)
    primary, secondary = ("total", "edge") if mode is EqualizeMode.TOTAL_FIRST else ("edge", "total")

    def gap(name, A, B):
        dn, df = _diffs(A, B)
        return abs(dn if name == "edge" else df)

    def triple(A, B):
        dn, df = _diffs(A, B)
        d = {"edge": abs(dn), "total": abs(df)}
        return len(A | B), max(d[secondary], 2), d[primary]

    before = triple(F1, F2)
    while True:
        F1, F2 = minimalize_mec(g, F1), minimalize_mec(g, F2)
        if gap(secondary, F1, F2) > 2:
            family = secondary
        elif gap(primary, F1, F2) > 1:
            family = primary
        else:
            break
        F1, F2 = _family_step(g, F1, F2, family, run_operation_mec)
        after = triple(F1, F2)
        assert after < before, "termination measure did not decrease"
        before = after
    if gap(secondary, F1, F2) == 2 and gap(primary, F1, F2) == 1:
        F1, F2 = _family_step(g, F1, F2, secondary, run_operation_mec)
    assert gap(primary, F1, F2) <= 1 and gap(primary, F1, F2) + gap(secondary, F1, F2) <= 2
    return F1, F2


def distribute_leftovers(g: MixedGraph, parts, mode=EqualizeMode.TOTAL_FIRST):
    """Deal the elements outside every part back out so the parts partition
    all of ``E | A``, keeping pairwise gaps inside the mode's state set."""
    mode = EqualizeMode.parse(mode)
    parts = [g.check_set(F) for F in parts]
    k = len(parts)
    used = frozenset().union(*parts)
    spare_edges = [e for e in g.sorted(g.all_edges) if e not in used]
    spare_arcs = [a for a in g.sorted(g.all_arcs) if a not in used]
    states = pair_states(mode)

    def deal(parts, spare, key):
        if not spare:
            return parts
        base, extra = divmod(len(spare), k)
        order = sorted(range(k), key=lambda i: (key(parts[i]), i))
        counts = [base] * k
        for i in order[:extra]:
            counts[i] += 1
        out, pos = [], 0
        for i in range(k):
            out.append(parts[i] | frozenset(spare[pos:pos + counts[i]]))
            pos += counts[i]
        return out

    def edge_total(F):
        e, _, t = part_sizes(F)
        return e, t

    def check(parts, allowed):
        for A in parts:
            for B in parts:
                assert _diffs(A, B) in allowed, f"pair state {_diffs(A, B)} left the admissible set"

    start_ok = all(_diffs(A, B) in states for A in parts for B in parts)
    if mode is EqualizeMode.TOTAL_FIRST:
        parts = deal(parts, spare_edges, lambda F: edge_total(F)[::-1])
    else:
        parts = deal(parts, spare_edges, edge_total)
    if start_ok:
        check(parts, states)
    parts = deal(parts, spare_arcs, lambda F: (len(F), -len(edges_of(F))))
    if start_ok:
        check(parts, states.extended((2, 1)) if mode is EqualizeMode.TOTAL_FIRST else states)
    assert frozenset().union(*parts) == g.all_elements
    return parts


def equitable_partition_mec(g: MixedGraph, parts, mode=EqualizeMode.TOTAL_FIRST) -> PartitionReport:
    """Rebalance a partition of all elements into k mixed edge covers."""
    mode = EqualizeMode.parse(mode)
    parts, union = _check_partition(g, parts, is_mixed_edge_cover, "mixed edge cover")
    if union != g.all_elements:
        raise DomainError("initial parts must cover every edge and arc")
    if len(parts) == 1:
        return PartitionReport(g, tuple(parts), "mec", mode)

    out, steps, restarts = two_phase(parts, mode, lambda A, B: equalize_pair_mec(g, A, B, mode))
    out = distribute_leftovers(g, out, mode)
    report = PartitionReport(g, tuple(out), "mec", mode, steps, restarts)
    assert all(is_mixed_edge_cover(g, F) for F in out)
    assert report.within_bounds(), report.gaps()
    return report


__all__ = [
    "AuxGraphMEC",
    "EDGE_FIRST_STATES",
    "MEC_OPERATIONS",
    "MEC_PATH_TABLE",
    "PairStateSet",
    "PathClassMEC",
    "PiChoice",
    "TOTAL_FIRST_STATES",
    "apply_paths_mec",
    "build_aux_mec",
    "choose_pi",
    "classify_path_mec",
    "distribute_leftovers",
    "equalize_pair_mec",
    "equitable_partition_mec",
    "pair_states",
]
