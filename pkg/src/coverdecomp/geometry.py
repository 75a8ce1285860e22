"""Exact rational planar primitives: points, directions, wedges, polygons.

Every coordinate is a :class:`fractions.Fraction`.  A wedge is the cone swept
counterclockwise from ``dir1`` to ``dir2``; its angle may exceed pi (a "big"
wedge) but never equals 0 or pi.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, NamedTuple, Sequence

from .errors import AngleTooLarge, DuplicatePoints, InvalidPolygon

Rat = Fraction


def rat(value) -> Fraction:
    """Parse an int, Fraction or ``"num/den"`` string into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} as an exact rational")


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y) -> "Point":
        return cls(rat(x), rat(y))

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point(self.x - other[0], self.y - other[1])

    def __neg__(self):
        return Point(-self.x, -self.y)

    def scale(self, c) -> "Point":
        return Point(self.x * c, self.y * c)


def cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def dot(a, b):
    return a[0] * b[0] + a[1] * b[1]


class Direction(NamedTuple):
    """A nonzero direction stored as a primitive integer vector."""

    dx: int
    dy: int

    def __neg__(self):
        return Direction(-self.dx, -self.dy)

    def norm1(self) -> int:
        return abs(self.dx) + abs(self.dy)


def direction(dx, dy) -> Direction:
    dx, dy = rat(dx), rat(dy)
    if dx == 0 and dy == 0:
        raise ValueError("zero vector is not a direction")
    den = math.lcm(dx.denominator, dy.denominator)
    ix, iy = int(dx * den), int(dy * den)
    g = math.gcd(ix, iy)
    return Direction(ix // g, iy // g)


def inner_direction(a, b) -> Direction:
    """A direction strictly inside the cone swept ccw from ``a`` to ``b``.

    The cone must have angle below pi.  Uses L1-normalised sums so the result
    stays exact.
    """
    na = abs(a[0]) + abs(a[1])
    nb = abs(b[0]) + abs(b[1])
    return direction(a[0] * nb + b[0] * na, a[1] * nb + b[1] * na)


@dataclass(frozen=True)
class Wedge:
    dir1: Direction
    dir2: Direction
    closed: bool = False

    def __post_init__(self):
        d1, d2 = direction(*self.dir1), direction(*self.dir2)
        object.__setattr__(self, "dir1", d1)
        object.__setattr__(self, "dir2", d2)
        if cross(d1, d2) == 0:
            raise ValueError("wedge sides must not be parallel (angle 0 or pi)")

    @classmethod
    def from_vectors(cls, d1, d2, closed: bool = False) -> "Wedge":
        return cls(direction(*d1), direction(*d2), closed)

    @property
    def is_big(self) -> bool:
        """Angle strictly greater than pi."""
        return cross(self.dir1, self.dir2) < 0

    @property
    def angle(self) -> float:
        a1 = math.atan2(self.dir1.dy, self.dir1.dx)
        a2 = math.atan2(self.dir2.dy, self.dir2.dx)
        return (a2 - a1) % (2 * math.pi)

    @property
    def sides(self) -> tuple[Direction, Direction]:
        return self.dir1, self.dir2

    def reflected(self) -> "Wedge":
        return Wedge(-self.dir1, -self.dir2, self.closed)

    def with_closed(self, closed: bool) -> "Wedge":
        return Wedge(self.dir1, self.dir2, closed)

    def bisector(self) -> Direction:
        if self.is_big:
            d = inner_direction(self.dir2, self.dir1)
            return -d
        return inner_direction(self.dir1, self.dir2)

    def contains_offset(self, v, closed: bool | None = None) -> bool:
        """Membership of the offset ``v = p - apex``."""
        closed = self.closed if closed is None else closed
        c1 = cross(self.dir1, v)
        c2 = cross(v, self.dir2)
        if closed:
            if v[0] == 0 and v[1] == 0:
                return True
            if self.is_big:
                return c1 >= 0 or c2 >= 0
            return c1 >= 0 and c2 >= 0
        if self.is_big:
            return c1 > 0 or c2 > 0
        return c1 > 0 and c2 > 0

    def coords(self, p):
        """Coordinates ``(a, b)`` proportional to ``p`` written in the basis of the sides.

        For a convex wedge ``q`` lies in the open translate at ``x`` iff both
        coordinates of ``q`` exceed those of ``x``.
        """
        return cross(p, self.dir2), cross(self.dir1, p)


class PlacedWedge(NamedTuple):
    wedge: Wedge
    apex: Point

    def contains(self, p) -> bool:
        return self.wedge.contains_offset((p[0] - self.apex[0], p[1] - self.apex[1]))


def wedge_contains(w: PlacedWedge, p) -> bool:
    return w.contains(p)


def apex_from_coords(w: Wedge, a, b) -> Point:
    """Inverse of :meth:`Wedge.coords` for convex wedges."""
    d1, d2 = w.dir1, w.dir2
    det = cross(d1, d2)
    x = Fraction(a * d1[0] + d2[0] * b, det)
    y = Fraction(d2[1] * b + d1[1] * a, det)
    return Point(x, y)


def minimal_translate(w: Wedge, pts: Sequence) -> PlacedWedge:
    """Inclusion-minimal translate of ``w`` whose closure holds every point."""
    if w.is_big:
        raise AngleTooLarge("minimal translate is unique only for wedges below pi")
    if not pts:
        raise ValueError("need at least one point")
    cs = [w.coords(p) for p in pts]
    a = min(c[0] for c in cs)
    b = min(c[1] for c in cs)
    return PlacedWedge(w, apex_from_coords(w, a, b))


def integer_coords(points: Sequence) -> list[tuple[int, int]]:
    """Scale by the common denominator; translate relations are unchanged."""
    if not points:
        return []
    den = reduce(math.lcm, (Fraction(c).denominator for p in points for c in p), 1)
    return [(int(p[0] * den), int(p[1] * den)) for p in points]


# ---------------------------------------------------------------------------
# Polygons


def _signed_area2(vs) -> Fraction:
    n = len(vs)
    return sum((cross(vs[i], vs[(i + 1) % n]) for i in range(n)), Fraction(0))


def _segments_intersect(p1, p2, q1, q2) -> bool:
    def orient(a, b, c):
        v = cross((b[0] - a[0], b[1] - a[1]), (c[0] - a[0], c[1] - a[1]))
        return (v > 0) - (v < 0)

    def on_seg(a, b, c):
        return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])

    o1, o2 = orient(p1, p2, q1), orient(p1, p2, q2)
    o3, o4 = orient(q1, q2, p1), orient(q1, q2, p2)
    if o1 != o2 and o3 != o4:
        return True
    if o1 == 0 and on_seg(p1, p2, q1):
        return True
    if o2 == 0 and on_seg(p1, p2, q2):
        return True
    if o3 == 0 and on_seg(q1, q2, p1):
        return True
    if o4 == 0 and on_seg(q1, q2, p2):
        return True
    return False


@dataclass(frozen=True)
class Polygon:
    """Simple polygon; vertices are stored counterclockwise."""

    vertices: tuple[Point, ...]

    def __post_init__(self):
        vs = tuple(Point.of(*v) for v in self.vertices)
        if len(vs) < 3:
            raise InvalidPolygon("a polygon needs at least 3 vertices")
        if len(set(vs)) != len(vs):
            raise InvalidPolygon("repeated vertex")
        area2 = _signed_area2(vs)
        if area2 == 0:
            raise InvalidPolygon("degenerate polygon")
        if area2 < 0:
            vs = tuple(reversed(vs))
        n = len(vs)
        for i in range(n):
            a, b, c = vs[i - 1], vs[i], vs[(i + 1) % n]
            if cross(b - a, c - b) == 0:
                raise InvalidPolygon(f"vertices around index {i} are collinear")
        for i in range(n):
            for j in range(i + 1, n):
                if j == i + 1 or (i == 0 and j == n - 1):
                    continue
                if _segments_intersect(vs[i], vs[(i + 1) % n], vs[j], vs[(j + 1) % n]):
                    raise InvalidPolygon("polygon is not simple")
        object.__setattr__(self, "vertices", vs)

    @classmethod
    def of(cls, coords: Iterable) -> "Polygon":
        return cls(tuple(Point.of(*c) for c in coords))

    def __len__(self):
        return len(self.vertices)

    def edges(self):
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def centroid(self) -> Point:
        vs = self.vertices
        n = len(vs)
        a2 = _signed_area2(vs)
        cx = cy = Fraction(0)
        for i in range(n):
            p, q = vs[i], vs[(i + 1) % n]
            c = cross(p, q)
            cx += (p.x + q.x) * c
            cy += (p.y + q.y) * c
        return Point(cx / (3 * a2), cy / (3 * a2))

    def translated(self, v) -> "Polygon":
        return Polygon(tuple(p + v for p in self.vertices))

    def scaled(self, c) -> "Polygon":
        return Polygon(tuple(p.scale(c) for p in self.vertices))

    def contains(self, p, closed: bool = False) -> bool:
        """Exact point membership; boundary points count only when ``closed``."""
        vs = self.vertices
        n = len(vs)
        inside = False
        for i in range(n):
            a, b = vs[i], vs[(i + 1) % n]
            if cross(b - a, (p[0] - a.x, p[1] - a.y)) == 0 and \
                    min(a.x, b.x) <= p[0] <= max(a.x, b.x) and min(a.y, b.y) <= p[1] <= max(a.y, b.y):
                return closed
            if (a.y > p[1]) != (b.y > p[1]):
                t = a.x + (p[1] - a.y) * (b.x - a.x) / (b.y - a.y)
                if p[0] < t:
                    inside = not inside
        return inside


def reflect_polygon(p: Polygon) -> Polygon:
    return Polygon(tuple(-v for v in p.vertices))


def polygon_wedges(p: Polygon, closed: bool = False) -> list[Wedge]:
    """One wedge per vertex, opening toward the polygon's interior."""
    vs = p.vertices
    n = len(vs)
    out = []
    for i in range(n):
        nxt = vs[(i + 1) % n] - vs[i]
        prv = vs[i - 1] - vs[i]
        out.append(Wedge(direction(*nxt), direction(*prv), closed))
    return out


# ---------------------------------------------------------------------------
# General position


@dataclass(frozen=True)
class GeneralPositionTransform:
    """Exact perturbation ``p_i -> p_i + epsilon * offsets[i]``.

    The identity has ``epsilon == 0``.  Perturbing preserves the strict order
    of every wedge-side coordinate, so every subset cut off by a wedge translate
    before the transform can still be cut off afterwards.
    """

    epsilon: Fraction = Fraction(0)
    offsets: tuple[tuple[int, int], ...] = field(default=())

    @property
    def is_identity(self) -> bool:
        return self.epsilon == 0

    def apply(self, points: Sequence) -> list[Point]:
        if self.is_identity:
            return [Point.of(*p) for p in points]
        e = self.epsilon
        return [Point(rat(p[0]) + e * o[0], rat(p[1]) + e * o[1]) for p, o in zip(points, self.offsets)]


def side_directions(wedges: Iterable[Wedge]) -> list[Direction]:
    out = []
    for w in wedges:
        for d in w.sides:
            if d not in out and -d not in out:
                out.append(d)
    return out


def _keys_distinct(points, dirs) -> bool:
    for d in dirs:
        vals = [cross(d, p) for p in points]
        if len(set(vals)) != len(vals):
            return False
    return True


def in_general_position(points: Sequence, wedges: Iterable[Wedge], extra: Iterable = ()) -> bool:
    """No two points span a line parallel to a wedge side (or an extra direction)."""
    dirs = side_directions(wedges) + [direction(*d) for d in extra]
    return _keys_distinct(points, dirs)


def rotate_to_general_position(points: Sequence, wedges: Sequence[Wedge], seed: int = 0,
                               extra: Iterable = ()) -> tuple[GeneralPositionTransform, list[Point]]:
    """Break every degeneracy with an exact, order-preserving perturbation."""
    pts = [Point.of(*p) for p in points]
    if len(set(pts)) != len(pts):
        raise DuplicatePoints("points must be pairwise distinct")
    dirs = side_directions(wedges) + [direction(*d) for d in extra]
    if _keys_distinct(pts, dirs):
        return GeneralPositionTransform(), pts
    # smallest positive gap of every side coordinate bounds the admissible shift
    gap = None
    for d in dirs:
        vals = sorted(set(cross(d, p) for p in pts))
        for a, b in zip(vals, vals[1:]):
            if gap is None or b - a < gap:
                gap = b - a
    bound = 1 << 20
    rng = random.Random(seed)
    for _ in range(64):
        offsets = tuple((rng.randint(-bound, bound), rng.randint(-bound, bound)) for _ in pts)
        spread = max(2 * bound * d.norm1() for d in dirs)
        eps = Fraction(1)
        if gap is not None:
            while eps * 2 * spread >= gap:
                eps /= 2
        else:
            eps = Fraction(1, 2 * spread)
        t = GeneralPositionTransform(eps, offsets)
        moved = t.apply(pts)
        if _keys_distinct(moved, dirs):
            return t, moved
    raise DuplicatePoints("could not reach general position")  # pragma: no cover
