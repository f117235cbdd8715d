"""Line-oriented text format for mixed graphs, weights and partitions.

::

    # comment
    V 3          vertex count (first non-comment line)
    E 0 1        edge; edges are numbered in file order
    A 1 2        arc tail -> head; arcs are numbered in file order
    W E 0 5      weight of edge 0
    P 0 A 0      arc 0 belongs to part 0
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import GraphValidationError, UsageError
from .graph_core import ElementId, MixedGraph


class ParseError(UsageError):
    def __init__(self, message, line=None, column=None):
        where = f"line {line}" + (f", column {column}" if column else "") if line else ""
        super().__init__(f"{where}: {message}" if where else message)
        self.line = line
        self.column = column


@dataclass
class GraphFile:
    graph: MixedGraph
    weights: dict = field(default_factory=dict)
    partition: dict = field(default_factory=dict)  # part label -> frozenset

    def parts(self) -> list:
        return [self.partition[k] for k in sorted(self.partition)]


def _ints(tokens, line, count, start_col):
    if len(tokens) != count:
        raise ParseError(f"expected {count} fields after {tokens[0] if tokens else 'tag'}", line)
    out = []
    for j, tok in enumerate(tokens[1:], start=1):
        try:
            out.append(int(tok))
        except ValueError:
            raise ParseError(f"not an integer: {tok!r}", line, start_col[j]) from None
    return out


def _columns(raw):
    cols, pos = [], 0
    for tok in raw.split():
        pos = raw.index(tok, pos)
        cols.append(pos + 1)
        pos += len(tok)
    return cols


def _element(kind_tok, idx, g_edges, g_arcs, line, col):
    kind = kind_tok.upper()
    if kind == "E":
        if not 0 <= idx < len(g_edges):
            raise ParseError(f"no edge with index {idx}", line, col)
        return ElementId.edge(idx)
    if kind == "A":
        if not 0 <= idx < len(g_arcs):
            raise ParseError(f"no arc with index {idx}", line, col)
        return ElementId.arc(idx)
    raise ParseError(f"element kind must be E or A, got {kind_tok!r}", line, col)


def parse_graph(text: str) -> GraphFile:
    n = None
    edges, arcs = [], []
    pending = []  # (line, cols, tokens) for W and P, resolved once all elements are known
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = body.split()
        if not tokens:
            continue
        cols = _columns(body)
        tag = tokens[0].upper()
        if tag == "V":
            if n is not None:
                raise ParseError("duplicate V line", lineno)
            (n,) = _ints(tokens, lineno, 2, cols)
            if n < 0:
                raise ParseError("vertex count must be nonnegative", lineno, cols[1])
            continue
        if n is None:
            raise ParseError("the V line must come first", lineno)
        if tag in ("E", "A"):
            u, v = _ints(tokens, lineno, 3, cols)
            for x, c in ((u, cols[1]), (v, cols[2])):
                if not 0 <= x < n:
                    raise ParseError(f"vertex {x} out of range 0..{n - 1}", lineno, c)
            if u == v:
                raise ParseError(f"loop at vertex {u}", lineno, cols[1])
            (edges if tag == "E" else arcs).append((u, v))
        elif tag in ("W", "P"):
            if len(tokens) != 4:
                raise ParseError(f"{tag} needs three fields", lineno)
            pending.append((lineno, cols, tokens))
        else:
            raise ParseError(f"unknown line tag {tokens[0]!r}", lineno, cols[0])
    if n is None:
        raise ParseError("missing V line")
    try:
        g = MixedGraph(n, tuple(edges), tuple(arcs))
    except GraphValidationError as exc:
        raise ParseError(str(exc)) from None

    weights, partition = {}, {}
    owner = {}
    for lineno, cols, tokens in pending:
        tag = tokens[0].upper()
        if tag == "W":
            idx, w = _ints([tokens[0], tokens[2], tokens[3]], lineno, 3, [cols[0], cols[2], cols[3]])
            e = _element(tokens[1], idx, edges, arcs, lineno, cols[1])
            if e in weights:
                raise ParseError(f"duplicate weight for {e!r}", lineno)
            weights[e] = w
        else:
            part, idx = _ints([tokens[0], tokens[1], tokens[3]], lineno, 3, [cols[0], cols[1], cols[3]])
            if part < 0:
                raise ParseError("part labels must be nonnegative", lineno, cols[1])
            e = _element(tokens[2], idx, edges, arcs, lineno, cols[2])
            if e in owner:
                raise ParseError(f"{e!r} is assigned to parts {owner[e]} and {part}", lineno)
            owner[e] = part
            partition.setdefault(part, set()).add(e)
    return GraphFile(g, weights, {k: frozenset(v) for k, v in partition.items()})


def serialize(g: MixedGraph, weights=None, partition=None) -> str:
    """Canonical text: V, edges, arcs, weights, then partition lines."""
    lines = [f"V {g.num_vertices}"]
    lines += [f"E {u} {v}" for u, v in g.edges]
    lines += [f"A {t} {h}" for t, h in g.arcs]
    for e in g.elements:
        if weights and e in weights:
            lines.append(f"W {e.kind} {e.index} {weights[e]}")
    if partition:
        if not isinstance(partition, dict):
            partition = dict(enumerate(partition))
        for label in sorted(partition):
            for e in g.sorted(partition[label]):
                lines.append(f"P {label} {e.kind} {e.index}")
    return "\n".join(lines) + "\n"


def to_dot(g: MixedGraph, parts=None, name="G") -> str:
    """Graphviz drawing; parts (if given) are colored."""
    palette = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"]
    color = {}
    for i, F in enumerate(parts or ()):
        for e in F:
            color[e] = palette[i % len(palette)]
    lines = [f"digraph {name} {{"]
    lines += [f"  {v};" for v in g.vertices]
    for e in g.elements:
        u, v = g.endpoints(e)
        attrs = [f'label="{e!r}"']
        if e.is_edge:
            attrs.append("dir=none")
        if e in color:
            attrs.append(f"color={color[e]}")
        lines.append(f"  {u} -> {v} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = ["GraphFile", "ParseError", "parse_graph", "serialize", "to_dot"]
