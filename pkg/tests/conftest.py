import sys
import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from coverdecomp.classify import classify_pair
from coverdecomp.geometry import Point, Polygon, Wedge, cross, rotate_to_general_position


def rdir(rng, r=6):
    while True:
        a = (rng.randint(-r, r), rng.randint(-r, r))
        if a != (0, 0):
            return a


def rwedge(rng, big=None, r=6):
    while True:
        a, b = rdir(rng, r), rdir(rng, r)
        if cross(a, b) == 0:
            continue
        w = Wedge.from_vectors(a, b)
        if big is None or w.is_big == big:
            return w


def rpair(rng, typ):
    while True:
        v, w = rwedge(rng), rwedge(rng)
        if classify_pair(v, w) is typ:
            return v, w


def rpoints(rng, n, ws=(), R=10 ** 6, general=True):
    pts = sorted({Point.of(rng.randint(0, R), rng.randint(0, R)) for _ in range(n)})
    if general:
        return rotate_to_general_position(pts, list(ws))[1]
    return pts


def rconvex(rng, n, r=50):
    """Random convex polygon with ``n`` vertices on an integer grid."""
    while True:
        pts = {(rng.randint(-r, r), rng.randint(-r, r)) for _ in range(4 * n)}
        hull = _hull(sorted(pts))
        if len(hull) >= n:
            step = len(hull) / n
            sel = [hull[int(i * step)] for i in range(n)]
            try:
                p = Polygon.of(sel)
            except Exception:
                continue
            from coverdecomp.classify import is_convex
            if is_convex(p):
                return p


def rsymmetric(rng, r=4):
    """Random centrally symmetric convex polygon; its centroid is the origin."""
    while True:
        pts = {(rng.randint(-r, r), rng.randint(-r, r)) for _ in range(4)}
        pts |= {(-x, -y) for x, y in pts}
        hull = _hull(sorted(pts))
        if len(hull) >= 4:
            return Polygon.of(hull)


def _hull(pts):
    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross((out[-1][0] - out[-2][0], out[-1][1] - out[-2][1]),
                                          (p[0] - out[-2][0], p[1] - out[-2][1])) <= 0:
                out.pop()
            out.append(p)
        return out
    lo, hi = half(pts), half(pts[::-1])
    return lo[:-1] + hi[:-1]


@pytest.fixture
def rng():
    return random.Random(12345)


directions = st.tuples(st.integers(-8, 8), st.integers(-8, 8)).filter(lambda d: d != (0, 0))


@st.composite
def wedges(draw, closed=None):
    a = draw(directions)
    b = draw(directions.filter(lambda d: cross(a, d) != 0))
    c = draw(st.booleans()) if closed is None else closed
    return Wedge.from_vectors(a, b, c)


@st.composite
def point_sets(draw, min_size=1, max_size=12, coord=40):
    pts = draw(st.lists(st.tuples(st.integers(-coord, coord), st.integers(-coord, coord)),
                        min_size=min_size, max_size=max_size, unique=True))
    return [Point(Fraction(x), Fraction(y)) for x, y in pts]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for num in sorted(lines):
            terminalreporter.write_line(lines[num])
