"""Command-line interface: ``matchforest <command> [options]``."""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import kernels
from .errors import DomainError, MatchForestError, UsageError
from .extensions import (
    PartitionableDigraph,
    bibranching_to_mixed,
    equitable_partition_bibranchings,
    is_bibranching,
    pack_covering_forests,
)
from .mec_equalize import equitable_partition_mec
from .mf_equalize import equitable_partition_mf
from .optimum import build_reduction, gallai, min_mixed_edge_cover, min_weight_mec
from .oracle import (
    count_structures,
    enumerate_partitions,
    enumerate_structures,
    find_packing,
    find_partition,
    planted_partition,
    random_mixed_graph,
)
from .partition import EqualizeMode
from .polytope import system_check, verify_integer_hull
from .structures import StructureKind, is_structure
from .textformat import parse_graph, serialize, to_dot

DESK_SCALE_WARNING = (
    "warning: --search-initial runs an exhaustive search (finding a partition is NP-complete "
    "in general); desk-scale instances only"
)


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path):
    return parse_graph(_read(path))


def _els(g, F):
    return [repr(e) for e in g.sorted(F)]


def _emit(args, data, text):
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _initial_parts(args, gf, finder):
    g = gf.graph
    if args.partition and args.search_initial:
        raise UsageError("use either --partition or --search-initial, not both")
    if args.partition:
        parts = parse_graph(serialize(g) + _partition_lines(_read(args.partition))).parts()
        if not parts:
            raise UsageError("the partition file has no P lines")
    elif args.search_initial:
        if args.k is None:
            raise UsageError("--search-initial needs --k")
        print(DESK_SCALE_WARNING, file=sys.stderr)
        parts = finder(g, args.k)
        if parts is None:
            raise DomainError(f"no initial family of {args.k} parts exists")
    else:
        raise UsageError("an initial partition is required: pass --partition FILE or --search-initial")
    if args.k is not None and len(parts) != args.k:
        raise UsageError(f"--k {args.k} but the partition has {len(parts)} parts")
    return list(parts)


def _partition_lines(text):
    return "".join(line + "\n" for line in text.splitlines() if line.split()[:1] == ["P"])


def _report_text(report):
    lines = [f"kind: {report.kind}  mode: {report.mode.value if report.mode else '-'}  k: {len(report.parts)}"]
    for i, (F, s) in enumerate(zip(report.parts, report.sizes)):
        lines.append(f"part {i}: edges={s[0]} arcs={s[1]} total={s[2]}  {' '.join(_els(report.graph, F))}")
    gaps = report.gaps()
    lines.append("gaps: " + " ".join(f"{c}={gaps[c]}" for c in ("edge", "arc", "total")))
    lines.append(f"within bounds: {str(report.within_bounds()).lower()}")
    return "\n".join(lines)


def _dot_or(args, g, parts, data, text):
    if args.dot:
        print(to_dot(g, parts))
    else:
        _emit(args, data, text)


# commands


def cmd_validate(args):
    gf = _load(args.file)
    g = gf.graph
    kind = StructureKind.parse(args.kind)
    sets = gf.parts() if gf.partition else [g.all_elements]
    results = [is_structure(g, F, kind) for F in sets]
    data = {"kind": kind.value, "valid": all(results), "sets": [
        {"elements": _els(g, F), "valid": ok} for F, ok in zip(sets, results)]}
    text = "\n".join(f"{' '.join(_els(g, F)) or '(empty)'}: {str(ok).lower()}" for F, ok in zip(sets, results))
    _emit(args, data, f"{kind.value}: {str(all(results)).lower()}\n{text}")
    return 0


def cmd_enumerate(args):
    g = _load(args.file).graph
    kind = StructureKind.parse(args.kind)
    if args.k is None:
        found = list(enumerate_structures(g, kind))
        data = {"kind": kind.value, "count": len(found), "structures": [_els(g, F) for F in found]}
        text = "\n".join(" ".join(_els(g, F)) or "(empty)" for F in found)
    else:
        found = list(enumerate_partitions(g, args.k, kind))
        data = {"kind": kind.value, "k": args.k, "count": len(found),
                "partitions": [[_els(g, F) for F in p] for p in found]}
        text = "\n".join(" | ".join(" ".join(_els(g, F)) or "(empty)" for F in p) for p in found)
    _emit(args, data, f"{len(found)} found\n{text}".rstrip())
    return 0


def cmd_gallai(args):
    g = _load(args.file).graph
    rep = gallai(g)
    data = rep.to_dict(g)
    if rep.rho is None:
        text = f"nu = {rep.nu}\nno mixed edge cover exists"
    else:
        text = (f"nu = {rep.nu}\nrho = {rep.rho}\nnu + rho = {rep.nu + rep.rho} = |V| = {g.num_vertices}: "
                f"{str(rep.identity_holds(g)).lower()}")
    _emit(args, data, text)
    return 0


def cmd_min_cover(args):
    gf = _load(args.file)
    g = gf.graph
    if gf.weights:
        F, weight = min_weight_mec(g, gf.weights)
        data = {"weighted": True, "weight": weight, "cover": _els(g, F)}
        text = f"minimum weight {weight}: {' '.join(_els(g, F))}"
    else:
        rho, F = min_mixed_edge_cover(g)
        data = {"weighted": False, "mix_size": rho.to_json(), "cover": _els(g, F)}
        text = f"minimum mix-size {rho}: {' '.join(_els(g, F))}"
    _emit(args, data, text)
    return 0


def _equalize(args, kind, run):
    gf = _load(args.file)
    g = gf.graph
    parts = _initial_parts(args, gf, lambda g, k: find_partition(g, k, kind))
    report = run(g, parts, EqualizeMode.parse(args.mode))
    _dot_or(args, g, report.parts, report.to_dict(), _report_text(report))
    return 0


def cmd_equalize_mf(args):
    return _equalize(args, StructureKind.MATCHING_FOREST, equitable_partition_mf)


def cmd_equalize_mec(args):
    return _equalize(args, StructureKind.MIXED_EDGE_COVER, equitable_partition_mec)


def _parse_vertex_list(text):
    try:
        return frozenset(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"--v1 must be a comma-separated vertex list, got {text!r}") from None


def cmd_equalize_bibranching(args):
    gf = _load(args.file)
    g = gf.graph
    if g.edges:
        raise UsageError("a bibranching instance has arcs only")
    d = PartitionableDigraph(g.num_vertices, g.arcs, _parse_vertex_list(args.v1))

    def finder(_, k):
        image, corr = bibranching_to_mixed(d)
        found = find_partition(image, k, StructureKind.MIXED_EDGE_COVER)
        return None if found is None else [corr.to_digraph(F) for F in found]

    parts = _initial_parts(args, gf, finder)
    report = equitable_partition_bibranchings(d, parts, EqualizeMode.parse(args.mode))
    lines = [f"kind: bibranching  mode: {report.mode.value}  k: {len(parts)}"]
    for i, (F, s) in enumerate(zip(report.digraph_parts, report.sizes)):
        arcs = " ".join(f"A{a.index}" for a in sorted(F, key=lambda x: x.index))
        lines.append(f"part {i}: crossing={s[0]} internal={s[1]} total={s[2]}  {arcs}")
    gaps = report.gaps()
    lines.append(f"gaps: crossing={gaps['edge']} internal={gaps['arc']} total={gaps['total']}")
    lines.append(f"within bounds: {str(report.within_bounds()).lower()}")
    text = "\n".join(lines)
    _dot_or(args, g, report.digraph_parts, report.to_dict(), text)
    assert all(is_bibranching(d, F) for F in report.digraph_parts)
    return 0


def cmd_pack(args):
    gf = _load(args.file)
    g = gf.graph
    parts = _initial_parts(args, gf, lambda g, k: find_packing(g, k, StructureKind.MIXED_COVERING_FOREST))
    report = pack_covering_forests(g, parts, EqualizeMode.parse(args.mode))
    data = report.to_dict()
    data["unused"] = _els(g, g.all_elements - frozenset().union(*report.parts))
    _dot_or(args, g, report.parts, data, _report_text(report) + f"\nunused: {' '.join(data['unused']) or '-'}")
    return 0


def cmd_check_polytope(args):
    g = _load(args.file).graph
    kind = StructureKind.parse(args.kind)
    if args.vector is not None:
        try:
            x = [Fraction(t) for t in args.vector.split(",") if t.strip()]
        except ValueError:
            raise UsageError("--vector must be comma-separated numbers") from None
        res = system_check(g, x, kind)
        data = {"kind": kind.value, "satisfied": res.ok,
                "violation": None if res.ok else str(res.violation)}
        text = "satisfied" if res.ok else f"violated: {res.violation}"
    else:
        ok = verify_integer_hull(g, kind)
        data = {"kind": kind.value, "hull_matches": ok, "structures": count_structures(g, kind)}
        text = f"integer points match the {kind.value} family: {str(ok).lower()}"
    _emit(args, data, text)
    return 0 if data.get("satisfied", data.get("hull_matches")) else 1


def cmd_reduce(args):
    gf = _load(args.file)
    g = gf.graph
    if gf.weights and len(gf.weights) != g.num_elements:
        raise UsageError("give a weight for every element or for none")
    weights = gf.weights or {e: 1 for e in g.elements}
    red = build_reduction(g, weights)
    text = serialize(red.graph, red.cost)
    data = {"text": text, "num_vertices": red.graph.num_vertices,
            "copy_edges": {str(v): repr(e) for v, e in red.copy_edges.items()}}
    if args.json:
        _emit(args, data, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_gen(args):
    rng = random.Random(args.seed)
    if args.planted:
        g, parts = planted_partition(rng, args.vertices, args.k or 2, args.planted)
        text = serialize(g, partition=list(parts))
    else:
        g = random_mixed_graph(rng, args.vertices, args.edges, args.arcs)
        text = serialize(g)
    if args.json:
        _emit(args, {"text": text}, text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="matchforest", description="Matching forests and mixed edge covers.")
    p.add_argument("--version", action="version", version=f"%(prog)s (kernels: {kernels.BACKEND})")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, graph=True):
        sp = sub.add_parser(name, help=help_text)
        if graph:
            sp.add_argument("file", help="graph file ('-' for stdin)")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=func)
        return sp

    def equalize_flags(sp):
        sp.add_argument("--k", type=int, help="number of parts")
        sp.add_argument("--mode", choices=["total", "edge"], default="total")
        sp.add_argument("--partition", help="file with P lines giving the initial parts")
        sp.add_argument("--search-initial", action="store_true", help="find initial parts by exhaustive search")
        sp.add_argument("--dot", action="store_true", help="emit a Graphviz drawing of the result")

    kinds = [k.value for k in StructureKind]
    sp = add("validate", cmd_validate, "check the element set (or each P part) against a structure kind")
    sp.add_argument("--kind", required=True, choices=kinds + ["matching-forest", "mixed-edge-cover"])
    sp = add("enumerate", cmd_enumerate, "list all structures, or all partitions with --k")
    sp.add_argument("--kind", required=True, choices=kinds)
    sp.add_argument("--k", type=int)
    add("gallai", cmd_gallai, "maximum forest, minimum cover and their sum")
    add("min-cover", cmd_min_cover, "minimum mix-size cover, or minimum weight cover when W lines exist")
    equalize_flags(add("equalize-mf", cmd_equalize_mf, "equitable partition into matching forests"))
    equalize_flags(add("equalize-mec", cmd_equalize_mec, "equitable partition into mixed edge covers"))
    sp = add("equalize-bibranching", cmd_equalize_bibranching, "equitable partition into bibranchings")
    equalize_flags(sp)
    sp.add_argument("--v1", required=True, help="comma-separated vertices of the source side")
    equalize_flags(add("pack-covering-forests", cmd_pack, "rebalance disjoint mixed covering forests"))
    sp = add("check-polytope", cmd_check_polytope, "check a vector against a system, or the whole hull")
    sp.add_argument("--kind", required=True, choices=["mf", "pmf", "mec"])
    sp.add_argument("--vector", help="comma-separated values in element order (edges, then arcs)")
    add("reduce", cmd_reduce, "print the enlarged graph used for minimum weight covers")
    sp = add("gen", cmd_gen, "random instance", graph=False)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--vertices", type=int, default=5)
    sp.add_argument("--edges", type=int, default=3)
    sp.add_argument("--arcs", type=int, default=3)
    sp.add_argument("--planted", choices=["mf", "mec"], help="plant a partition into --k structures")
    sp.add_argument("--k", type=int)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except MatchForestError as exc:
        err = {"error": type(exc).__name__, "message": str(exc), "exit_code": exc.exit_code}
        print(json.dumps(err), file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
