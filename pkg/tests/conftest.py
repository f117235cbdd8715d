import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from helpers import ACCEPTANCE_LINES  # noqa: E402
from matchforest import MixedGraph  # noqa: E402


@pytest.fixture
def dagger():
    """u=0, v=1, w=2, x=3, y=4; edges uv, xy; arcs w->x, w->y."""
    return MixedGraph(5, ((0, 1), (3, 4)), ((2, 3), (2, 4)))


@pytest.fixture
def chain():
    """Edge {0,1} followed by arc (1,2)."""
    return MixedGraph(3, ((0, 1),), ((1, 2),))


@pytest.fixture
def two_gadget():
    """Two components, each with a unique split into two mixed edge covers."""
    return MixedGraph(6, ((0, 1), (0, 2), (1, 3), (4, 5), (4, 5)), ((0, 2), (0, 3)))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
