from __future__ import annotations

import sys

import pytest

from dwdefect.complex import BULK, DEFECT, StratifiedComplex, orient_coherently
from dwdefect.examples import sphere_equator


def flag_failure_complex() -> StratifiedComplex:
    """Octahedron whose edge (0,3) was flipped to (2,4): triangle (0,2,4) meets
    the equatorial defect in the two non-adjacent vertices 2 and 4."""
    top = [(0, 2, 4), (2, 3, 4), (0, 4, 5), (0, 2, 5),
           (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 2, 5)]
    defect = [(2, 3), (3, 4), (4, 5), (2, 5)]
    return StratifiedComplex.from_top(2, top, [BULK, BULK] + [DEFECT] * 4, None, defect,
                                      orient_coherently(top), orient_coherently(defect))


def side_conflict_complex() -> StratifiedComplex:
    """Octahedron with one equator edge oriented against the others, so the
    northern hemisphere is both inbound and outbound."""
    c = sphere_equator()
    signs = list(c.defect_orientation)
    signs[0] = -signs[0]
    return StratifiedComplex.from_top(c.d, c.top, c.strata, c.order, c.defect,
                                      c.top_orientation, signs)


@pytest.fixture
def flag_failure():
    return flag_failure_complex()


@pytest.fixture
def side_conflict():
    return side_conflict_complex()


def suspended_octahedron() -> StratifiedComplex:
    """Suspension of the octahedron: a small 3-sphere whose defect is the
    suspended equator, splitting it into two bulk balls."""
    c = sphere_equator()
    top = [s + (p,) for s in c.top for p in (6, 7)]
    defect = [e + (p,) for e in c.defect for p in (6, 7)]
    strata = list(c.strata) + [DEFECT, DEFECT]
    return StratifiedComplex.from_top(3, top, strata, None, defect,
                                      orient_coherently(top), orient_coherently(defect))


@pytest.fixture
def small3():
    return suspended_octahedron()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
