import pytest
from hypothesis import given, settings

from matchforest.textformat import ParseError, parse_graph, serialize, to_dot

from helpers import graph, ids, mixed_graphs


def test_parse_example():
    gf = parse_graph("# demo\nV 3\nE 0 1\nA 1 2   # arc\nW E 0 5\nP 1 A 0\nP 0 E 0\n")
    assert gf.graph == graph(3, [(0, 1)], [(1, 2)])
    assert gf.weights == {next(iter(ids("E0"))): 5}
    assert gf.parts() == [ids("E0"), ids("A0")]


@pytest.mark.parametrize("text, fragment", [
    ("V 2\nA 0 0\n", "loop"),
    ("E 0 1\n", "V line must come first"),
    ("V 2\nV 3\n", "duplicate V"),
    ("V 2\nE 0 5\n", "out of range"),
    ("V 2\nE 0 x\n", "not an integer"),
    ("V 2\nQ 1\n", "unknown line tag"),
    ("V 2\nE 0 1\nW A 0 3\n", "no arc"),
    ("V 2\nE 0 1\nP 0 E 0\nP 1 E 0\n", "assigned to parts"),
    ("V 2\nE 0 1\nW E 0 1\nW E 0 2\n", "duplicate weight"),
    ("# nothing\n", "missing V"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_graph(text)


def test_error_position():
    with pytest.raises(ParseError) as info:
        parse_graph("V 2\nA 0 0\n")
    assert (info.value.line, info.value.column) == (2, 3)


@settings(max_examples=100, deadline=None)
@given(mixed_graphs())
def test_round_trip(g):
    text = serialize(g, weights={e: i for i, e in enumerate(g.elements)},
                     partition=[g.all_edges, g.all_arcs])
    gf = parse_graph(text)
    assert gf.graph == g
    assert serialize(gf.graph, gf.weights, gf.partition) == text


def test_dot(dagger):
    out = to_dot(dagger, [ids("E0")])
    assert out.startswith("digraph G {") and "color=red" in out and "dir=none" in out
