import os
import subprocess
import sys

import pytest
from hypothesis import given, settings

from matchforest import kernels
from matchforest.kernels import _pykernels
from matchforest.structures import StructureKind, is_structure

from helpers import mixed_graphs

try:
    from matchforest.kernels import _ckernels
except ImportError:  # extension not built
    _ckernels = None

KINDS = {
    StructureKind.MATCHING: kernels.MATCHING,
    StructureKind.BRANCHING: kernels.BRANCHING,
    StructureKind.MATCHING_FOREST: kernels.MF,
    StructureKind.PERFECT_MATCHING_FOREST: kernels.PMF,
    StructureKind.MIXED_EDGE_COVER: kernels.MEC,
    StructureKind.MIXED_COVERING_FOREST: kernels.MCF,
}

BACKENDS = [_pykernels] + ([_ckernels] if _ckernels else [])


def _table(mod, g, code):
    tails, heads, is_edge = g.kernel_arrays
    return bytes(mod.structure_table(code, g.num_vertices, tails, heads, is_edge))


def _predicate(g, F, kind):
    # the matching/branching predicates reject sets of the wrong element type
    if kind is StructureKind.MATCHING and any(e.is_arc for e in F):
        return False
    if kind is StructureKind.BRANCHING and any(e.is_edge for e in F):
        return False
    return is_structure(g, F, kind)


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
@settings(max_examples=60, deadline=None)
@given(g=mixed_graphs(max_vertices=5, max_elements=7))
def test_table_matches_predicates(mod, g):
    for kind, code in KINDS.items():
        table = _table(mod, g, code)
        for mask in range(1 << g.num_elements):
            assert bool(table[mask]) == _predicate(g, g.from_mask(mask), kind), (kind, mask)


@pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")
@settings(max_examples=80, deadline=None)
@given(g=mixed_graphs(max_vertices=7, max_elements=10))
def test_backends_agree(g):
    for code in KINDS.values():
        assert _table(_pykernels, g, code) == _table(_ckernels, g, code)
        table = _pykernels.structure_table(code, g.num_vertices, *g.kernel_arrays)
        for k in (1, 2, 3):
            for exact in (True, False):
                py = list(_pykernels.search_partitions(table, g.num_elements, k, exact, 0))
                cy = list(_ckernels.search_partitions(table, g.num_elements, k, exact, 0))
                assert py == cy


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def test_partition_search_basics(mod):
    # 3 elements, every subset valid
    table = bytearray([1] * 8)
    found = list(mod.search_partitions(table, 3, 2, True, 0))
    assert len(found) == 2 ** 3
    assert all(a | b == 7 and not a & b for a, b in found)
    assert len(list(mod.search_partitions(table, 3, 2, True, 1))) == 1
    # nothing but the empty set valid: no exact partition
    table = bytearray([1] + [0] * 7)
    assert list(mod.search_partitions(table, 3, 2, True, 0)) == []


def test_pure_python_switch():
    env = dict(os.environ, MATCHFOREST_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import matchforest.kernels as k; print(k.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")
    if _ckernels is not None and not os.environ.get("MATCHFOREST_PURE_PYTHON"):
        assert kernels.BACKEND == "cython"
