"""Point sets that no two-coloring can serve, for a Special pair of wedges.

``S(k, l)`` is a point set with two families of translates: translates of
``V`` holding exactly ``k`` points and translates of ``W`` holding exactly
``l`` points.  Every red/blue coloring leaves some ``V`` translate of the
first family all red or some ``W`` translate of the second family all blue.

The set is built recursively: a point ``p``, a shrunken copy of
``S(k-1, l)`` placed where ``V`` translates reach ``p`` but ``W`` translates
do not, and a shrunken copy of ``S(k, l-1)`` placed the other way round.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .classify import PairType, classify_pair, find_special_pair
from .errors import CounterexampleFound, NoSpecialPair, NotSpecialPair, TooLarge, VerificationFailed
from .geometry import PlacedWedge, Point, Polygon, Wedge, cross, dot, polygon_wedges, reflect_polygon
from .oracle import MAX_EXHAUSTIVE, WedgeRanges, _coloring_exists, colors_from_mask

MAX_CERTIFY = 25
HARD_CERTIFY_LIMIT = 30  # 2**30 colorings, a few minutes of numpy work


@dataclass
class WitnessInstance:
    points: list[Point]
    v: Wedge
    w: Wedge
    k: int
    l: int
    v_translates: list[PlacedWedge]
    w_translates: list[PlacedWedge]
    v_sets: list[frozenset]
    w_sets: list[frozenset]
    polygon: Polygon | None = None
    v_polygons: list[Polygon] = field(default_factory=list)
    w_polygons: list[Polygon] = field(default_factory=list)

    def __len__(self):
        return len(self.points)


def _halfplane_normal(ws: Sequence[Wedge]):
    """A vector with positive dot product on every side of every wedge."""
    sides = [d for w in ws for d in w.sides]
    for a in sides:
        for b in sides:
            if cross(a, b) <= 0:
                continue
            if all(cross(a, c) >= 0 and cross(c, b) >= 0 for c in sides):
                h = (b[1] - a[1], a[0] - b[0])
                if all(dot(h, c) > 0 for c in sides):
                    return h
    return None


def _offset_inside(v: Wedge, w: Wedge):
    """A direction strictly inside ``v`` and outside the closure of ``w``."""
    d1, d2 = v.dir1, v.dir2
    n = 1
    while n < 1 << 20:
        for a, b in ((d1, d2), (d2, d1)):
            d = (n * a[0] + b[0], n * a[1] + b[1])
            if v.contains_offset(d, closed=False) and not w.contains_offset(d, closed=True):
                return d
        n *= 2
    raise NotSpecialPair("no direction of v avoids w")  # pragma: no cover


def _place(p, scale, shift):
    return Point(p.x * scale + shift[0], p.y * scale + shift[1])


class _Builder:
    def __init__(self, v: Wedge, w: Wedge):
        if classify_pair(v, w) is not PairType.SPECIAL:
            raise NotSpecialPair("the wedges do not form a Special pair")
        h = _halfplane_normal([v, w])
        if h is None:
            raise NotSpecialPair("the wedges do not lie in a common open halfplane")
        self.v, self.w = v, w
        a = _offset_inside(v, w)
        b = _offset_inside(w, v)
        # equal heights along h: the offset between the two copies is parallel
        # to the boundary of the common halfplane, so it lies in neither wedge
        self.dA = (Fraction(a[0], dot(a, h)), Fraction(a[1], dot(a, h)))
        self.dB = (Fraction(b[0], dot(b, h)), Fraction(b[1], dot(b, h)))
        self.memo: dict[tuple[int, int], tuple] = {}

    def build(self, k: int, l: int):
        """(points, V apexes with index sets, W apexes with index sets); ``p`` is at the origin."""
        key = (k, l)
        if key in self.memo:
            return self.memo[key]
        origin = Point(Fraction(0), Fraction(0))
        if k == 0:
            out = ([], [(origin, frozenset())], [])
        elif l == 0:
            out = ([], [], [(origin, frozenset())])
        else:
            out = self._combine(self.build(k - 1, l), self.build(k, l - 1))
        self.memo[key] = out
        return out

    def _combine(self, A, B):
        pa, va, wa = A
        pb, vb, wb = B
        p = Point(Fraction(0), Fraction(0))
        scale = Fraction(1, 2)
        while True:
            sa = (-self.dA[0], -self.dA[1])
            sb = (-self.dB[0], -self.dB[1])
            pts = [p] + [_place(q, scale, sa) for q in pa] + [_place(q, scale, sb) for q in pb]
            oa, ob = 1, 1 + len(pa)
            vs = [(_place(x, scale, sa), frozenset({0} | {i + oa for i in s})) for x, s in va]
            vs += [(_place(x, scale, sb), frozenset(i + ob for i in s)) for x, s in vb]
            ws = [(_place(x, scale, sa), frozenset(i + oa for i in s)) for x, s in wa]
            ws += [(_place(x, scale, sb), frozenset({0} | {i + ob for i in s})) for x, s in wb]
            if self._exact(pts, vs, self.v) and self._exact(pts, ws, self.w):
                return pts, vs, ws
            scale /= 2

    @staticmethod
    def _exact(pts, family, wedge) -> bool:
        for apex, want in family:
            pw = PlacedWedge(wedge, apex)
            got = {i for i, q in enumerate(pts) if pw.contains(q)}
            if got != want:
                return False
        return True


def construct_witness(v: Wedge, w: Wedge, k: int, l: int) -> WitnessInstance:
    """The set ``S(k, l)`` of ``C(k + l, k) - 1`` points with its two translate families."""
    if k < 1 or l < 1:
        raise ValueError("k and l must be positive")
    v, w = v.with_closed(False), w.with_closed(False)
    pts, vs, ws = _Builder(v, w).build(k, l)
    return WitnessInstance(
        points=list(pts), v=v, w=w, k=k, l=l,
        v_translates=[PlacedWedge(v, a) for a, _ in vs], w_translates=[PlacedWedge(w, a) for a, _ in ws],
        v_sets=[s for _, s in vs], w_sets=[s for _, s in ws])


# ---------------------------------------------------------------------------
# Certification


@dataclass
class Certificate:
    n: int
    total: int
    defeated: int
    witness: np.ndarray  # per coloring: V translate index, or -1 - (W translate index)

    def __str__(self):
        return f"{self.defeated}/{self.total} colorings defeated"

    def explain(self, red_mask: int) -> str:
        i = int(self.witness[red_mask])
        if i >= 0:
            return f"V translate {i} is all red"
        return f"W translate {-1 - i} is all blue"


def _masks(wi: WitnessInstance):
    """Bitmasks of the points actually inside each emitted translate."""
    def mask(pw):
        m = 0
        for i, q in enumerate(wi.points):
            if pw.contains(q):
                m |= 1 << i
        return m
    return [mask(t) for t in wi.v_translates], [mask(t) for t in wi.w_translates]


def certify_indecomposable(wi: WitnessInstance, max_points: int = MAX_CERTIFY) -> Certificate:
    """Check all ``2**n`` colorings; each must leave an emitted ``V`` translate
    all red or an emitted ``W`` translate all blue."""
    n = len(wi.points)
    if n > min(max_points, HARD_CERTIFY_LIMIT):
        raise TooLarge(f"{n} points exceed the exhaustive limit {min(max_points, HARD_CERTIFY_LIMIT)}")
    vm, wm = _masks(wi)
    for t, m in zip(wi.v_translates, vm):
        if bin(m).count("1") != wi.k:
            raise VerificationFailed(f"a V translate holds {bin(m).count('1')} points instead of {wi.k}")
    full = (1 << n) - 1
    total = 1 << n
    table = np.full(total, np.iinfo(np.int32).min, dtype=np.int32)
    chunk = 1 << 20
    for start in range(0, total, chunk):
        red = np.arange(start, min(total, start + chunk), dtype=np.int64)
        blue = full ^ red
        slot = table[start:start + len(red)]
        open_ = np.ones(len(red), dtype=bool)
        for i, m in enumerate(vm):
            hit = open_ & ((red & m) == m)
            slot[hit] = i
            open_ &= ~hit
        for i, m in enumerate(wm):
            hit = open_ & ((blue & m) == m)
            slot[hit] = -1 - i
            open_ &= ~hit
        if open_.any():
            raise CounterexampleFound(int(red[np.argmax(open_)]))
    return Certificate(n, total, total, table)


# ---------------------------------------------------------------------------
# Colorings that do exist


def _k_range_masks(pts, wedges, k) -> list[int]:
    masks = set()
    for w in wedges:
        wr = WedgeRanges(pts, w)
        for i, j in zip(*np.nonzero(wr.total == k)):
            m = 0
            for q in wr.members(int(i), int(j)):
                m |= 1 << q
            masks.add(m)
    return sorted(masks)


def good_coloring_exists(n: int, k: int, pts: Sequence, v: Wedge, w: Wedge, seed: int = 0,
                         tries: int = 2000) -> list[int] | None:
    """A coloring of ``pts`` (``n`` of them) in which no translate of ``v`` or
    ``w`` with at least ``k`` points is monochromatic, or ``None``.

    Any translate with ``k`` or more points contains one with exactly ``k``,
    so only those are checked.  Random colorings are repaired by flipping a
    point of a monochromatic range; small inputs fall back to exhaustive search.
    """
    pts = list(pts)
    if len(pts) != n:
        raise ValueError("n must equal the number of points")
    if n == 0:
        return []
    masks = _k_range_masks(pts, [v, w], k)
    full = (1 << n) - 1
    rng = random.Random(seed)

    def bad(c):
        return [m for m in masks if c & m == m or (full ^ c) & m == m]

    for _ in range(tries):
        c = rng.getrandbits(n)
        for _ in range(4 * n):
            hits = bad(c)
            if not hits:
                return colors_from_mask(n, c)
            m = rng.choice(hits)
            bits = [q for q in range(n) if m >> q & 1]
            c ^= 1 << rng.choice(bits)
    if n <= MAX_EXHAUSTIVE:
        c = _coloring_exists(n, masks)
        if c is not None:
            return colors_from_mask(n, c)
    return None


# ---------------------------------------------------------------------------
# Polygons


def polygon_witness(p: Polygon, k: int) -> WitnessInstance:
    """``S(k, k)`` for a Special pair of vertex wedges of the reflected polygon,
    shrunk until each wedge translate can be replaced by the polygon translate
    with that vertex at the apex, cutting off the same points."""
    dual = reflect_polygon(p)
    pair = find_special_pair(dual)
    if pair is None:
        raise NoSpecialPair("the polygon has no Special pair of vertex wedges")
    i, j = pair
    ws = polygon_wedges(dual)
    base = construct_witness(ws[i], ws[j], k, k)
    scale = Fraction(1)
    while True:
        pts = [q.scale(scale) for q in base.points]
        vpol = [dual.translated(t.apex.scale(scale) - dual.vertices[i]) for t in base.v_translates]
        wpol = [dual.translated(t.apex.scale(scale) - dual.vertices[j]) for t in base.w_translates]
        ok = all({n for n, q in enumerate(pts) if poly.contains(q)} == want
                 for poly, want in zip(vpol + wpol, base.v_sets + base.w_sets))
        if ok:
            break
        scale /= 2
    return WitnessInstance(
        points=pts, v=base.v, w=base.w, k=k, l=k,
        v_translates=[PlacedWedge(base.v, t.apex.scale(scale)) for t in base.v_translates],
        w_translates=[PlacedWedge(base.w, t.apex.scale(scale)) for t in base.w_translates],
        v_sets=base.v_sets, w_sets=base.w_sets, polygon=dual, v_polygons=vpol, w_polygons=wpol)


def binomial_size(k: int, l: int) -> int:
    return math.comb(k + l, k) - 1
