"""Bitmask kernels behind the exhaustive oracles.

The compiled extension is used when it was built; otherwise, or when the
environment variable ``MATCHFOREST_PURE_PYTHON`` is set to a non-empty
value, the pure-Python implementation is used. Both expose the same two
functions.
"""
import os

from . import _pykernels

MATCHING = _pykernels.MATCHING
BRANCHING = _pykernels.BRANCHING
MF = _pykernels.MF
PMF = _pykernels.PMF
MEC = _pykernels.MEC
MCF = _pykernels.MCF

if os.environ.get("MATCHFOREST_PURE_PYTHON"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

structure_table = _impl.structure_table
search_partitions = _impl.search_partitions

__all__ = [
    "BACKEND",
    "BRANCHING",
    "MATCHING",
    "MCF",
    "MEC",
    "MF",
    "PMF",
    "search_partitions",
    "structure_table",
]
