"""Five-way classification of wedge pairs and Special-pair detection."""

from __future__ import annotations

import enum
from itertools import combinations

from .geometry import Polygon, Wedge, cross, polygon_wedges


class PairType(enum.Enum):
    BIG = "Big"
    HALFPLANE = "Halfplane"
    CONTAIN = "Contain"
    HARD = "Hard"
    SPECIAL = "Special"

    def __str__(self):
        return self.value


_RIGHT, _LEFT, _UPPER, _LOWER = "R", "L", "U", "D"


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _region(w: Wedge, d, toward) -> str:
    """Which of the four regions cut by the lines through ``w``'s sides holds ``d``.

    A side ``d`` lying on one of those lines is nudged away from ``toward``
    (the other side of its own wedge), so closures decide the boundary cases:
    two quadrants sharing a side cover a halfplane.
    """
    s1 = _sign(cross(w.dir1, d)) or -_sign(cross(w.dir1, toward))
    s2 = _sign(cross(w.dir2, d)) or -_sign(cross(w.dir2, toward))
    if s1 > 0 and s2 < 0:
        return _RIGHT
    if s1 < 0 and s2 > 0:
        return _LEFT
    if s1 > 0 and s2 > 0:
        return _UPPER
    return _LOWER


def cone_within(inner: Wedge, outer: Wedge) -> bool:
    """Closed containment of convex cones anchored at the origin."""
    return all(outer.contains_offset(d, closed=True) for d in inner.sides)


def is_contain_pair(v: Wedge, w: Wedge) -> bool:
    return any(cone_within(a, b) for a, b in ((v, w), (v, w.reflected()), (w, v), (w, v.reflected())))


def classify_pair(v: Wedge, w: Wedge) -> PairType:
    if v.is_big or w.is_big:
        return PairType.BIG
    if is_contain_pair(v, w):
        return PairType.CONTAIN
    regions = {_region(w, v.dir1, v.dir2), _region(w, v.dir2, v.dir1)}
    if regions == {_RIGHT, _LEFT}:
        return PairType.HALFPLANE
    if _LEFT in regions:
        return PairType.HARD
    if regions in ({_UPPER, _LOWER}, {_RIGHT}):
        return PairType.CONTAIN
    return PairType.SPECIAL


def is_convex(p: Polygon) -> bool:
    vs = p.vertices
    n = len(vs)
    return all(cross(vs[i] - vs[i - 1], vs[(i + 1) % n] - vs[i]) > 0 for i in range(n))


def find_special_pair(p: Polygon) -> tuple[int, int] | None:
    ws = polygon_wedges(p)
    for i, j in combinations(range(len(ws)), 2):
        if classify_pair(ws[i], ws[j]) is PairType.SPECIAL:
            return i, j
    return None


def special_pairs(ws) -> list[tuple[int, int]]:
    return [(i, j) for i, j in combinations(range(len(ws)), 2)
            if classify_pair(ws[i], ws[j]) is PairType.SPECIAL]
