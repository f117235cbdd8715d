"""Equalization modes, partition reports and the two-phase k-way driver."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations

from .errors import UsageError
from .graph_core import MixedGraph, arcs_of, edges_of


class EqualizeMode(str, Enum):
    """Which criterion is equalized to within one: total size or edge size."""

    TOTAL_FIRST = "total"
    EDGE_FIRST = "edge"

    @classmethod
    def parse(cls, value) -> "EqualizeMode":
        if isinstance(value, cls):
            return value
        key = str(value).lower().replace("_", "").replace("-", "")
        table = {"total": cls.TOTAL_FIRST, "totalfirst": cls.TOTAL_FIRST,
                 "edge": cls.EDGE_FIRST, "edgefirst": cls.EDGE_FIRST}
        if key not in table:
            raise UsageError(f"unknown mode {value!r}; use 'total' or 'edge'")
        return table[key]

    @property
    def bounds(self) -> dict:
        """Guaranteed pairwise gaps for (edge, arc, total) size."""
        if self is EqualizeMode.TOTAL_FIRST:
            return {"edge": 2, "arc": 2, "total": 1}
        return {"edge": 1, "arc": 2, "total": 2}


def part_sizes(F) -> tuple:
    """(edge size, arc size, total size)."""
    e = len(edges_of(F))
    a = len(arcs_of(F))
    return e, a, e + a


CRITERIA = ("edge", "arc", "total")


@dataclass
class PartitionReport:
    graph: MixedGraph
    parts: tuple
    kind: str
    mode: EqualizeMode | None = None
    steps: int = 0
    restarts: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def sizes(self) -> list:
        return [part_sizes(F) for F in self.parts]

    def difference_matrix(self, criterion: str) -> list:
        """Signed ``size_i - size_j`` for the given criterion."""
        col = CRITERIA.index(criterion)
        s = [x[col] for x in self.sizes]
        return [[a - b for b in s] for a in s]

    def gaps(self) -> dict:
        out = {}
        for col, name in enumerate(CRITERIA):
            vals = [x[col] for x in self.sizes]
            out[name] = max(vals) - min(vals) if vals else 0
        return out

    def within_bounds(self) -> bool:
        if self.mode is None:
            return True
        gaps = self.gaps()
        return all(gaps[c] <= b for c, b in self.mode.bounds.items())

    def to_dict(self) -> dict:
        g = self.graph
        return {
            "kind": self.kind,
            "mode": self.mode.value if self.mode else None,
            "k": len(self.parts),
            "parts": [[repr(e) for e in g.sorted(F)] for F in self.parts],
            "sizes": [dict(zip(CRITERIA, s)) for s in self.sizes],
            "gaps": self.gaps(),
            "bounds": self.mode.bounds if self.mode else None,
            "within_bounds": self.within_bounds(),
            "differences": {c: self.difference_matrix(c) for c in CRITERIA},
            "steps": self.steps,
            "restarts": self.restarts,
            **self.extra,
        }


def _keys(mode: EqualizeMode):
    if mode is EqualizeMode.TOTAL_FIRST:
        return (lambda F: len(F)), (lambda F: len(edges_of(F)))
    return (lambda F: len(edges_of(F))), (lambda F: len(F))


def _measure(vals):
    hi, lo = max(vals), min(vals)
    return hi, -lo, vals.count(hi) + vals.count(lo)


def two_phase(parts, mode: EqualizeMode, pair_fn, on_shrink=None):
    """Drive a pair equalizer over k parts.

    ``pair_fn(Fi, Fj)`` returns the equalized pair. Phase 1 brings the
    primary size into two consecutive values by repeatedly fixing an extreme
    pair; phase 2 then fixes the secondary size. If a pair step shrinks the
    union (covers only), ``on_shrink`` may adjust the parts and everything
    restarts. Returns ``(parts, steps, restarts)``.
    """
    parts = list(parts)
    primary, secondary = _keys(mode)
    steps = restarts = 0

    def step(i, j, measure_of):
        nonlocal steps
        before = len(parts[i] | parts[j])
        old = measure_of()
        parts[i], parts[j] = pair_fn(parts[i], parts[j])
        steps += 1
        if len(parts[i] | parts[j]) < before:
            return True
        assert measure_of() < old, "equalization measure did not decrease"
        return False

    while True:
        shrunk = False
        while True:
            vals = [primary(F) for F in parts]
            if max(vals) - min(vals) <= 1:
                break
            i, j = vals.index(max(vals)), vals.index(min(vals))
            if step(i, j, lambda: _measure([primary(F) for F in parts])):
                shrunk = True
                break
        while not shrunk:
            pvals = [primary(F) for F in parts]
            svals = [secondary(F) for F in parts]
            q = min(pvals)
            if max(pvals) == q:
                if max(svals) - min(svals) <= 2:
                    break
                i, j = svals.index(max(svals)), svals.index(min(svals))
            else:
                best = None
                for i0, j0 in combinations(range(len(parts)), 2):
                    if {pvals[i0], pvals[j0]} != {q, q + 1}:
                        continue
                    d = abs(svals[i0] - svals[j0])
                    if d > 1 and (best is None or d > best[0]):
                        best = (d, i0, j0)
                if best is None:
                    break
                _, i, j = best
            if step(i, j, lambda: _measure([secondary(F) for F in parts])):
                shrunk = True
        if not shrunk:
            return parts, steps, restarts
        restarts += 1
        if on_shrink is not None:
            parts = list(on_shrink(parts))
