"""Brute-force ground truth for wedge ranges, colorings and coverings.

A finite point set admits only finitely many distinct subsets cut off by the
translates of a wedge.  For a convex wedge such a subset is
``{q : a(q) >= a_i, b(q) >= b_j}`` for threshold ranks ``i, j`` of the two side
coordinates; for a big wedge (a union of two open halfplanes) it is
``{q : c1(q) >= c1_i} | {q : c2(q) >= c2_j}``.  Counting over the full rank
grid with 2-D suffix sums gives every canonical range at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import NamedTuple, Sequence

import numpy as np

from .errors import TooLarge
from .geometry import PlacedWedge, Wedge, apex_from_coords, cross

RED, BLUE = 0, 1


def _dense_rank(values) -> tuple[list[int], list]:
    distinct = sorted(set(values))
    index = {v: i for i, v in enumerate(distinct)}
    return [index[v] for v in values], distinct


def _between(distinct, i):
    """A value strictly below ``distinct[i]`` and above ``distinct[i - 1]``."""
    if not distinct:
        return Fraction(0)
    if i == 0:
        return Fraction(distinct[0]) - 1
    if i == len(distinct):
        return Fraction(distinct[-1]) + 1
    return Fraction(distinct[i - 1] + distinct[i], 2)


class WedgeRanges:
    """All canonical ranges of one wedge on one point set."""

    def __init__(self, points: Sequence, wedge: Wedge):
        self.points = list(points)
        self.wedge = wedge
        ip = self.points
        d1, d2 = wedge.dir1, wedge.dir2
        if wedge.is_big:
            k1 = [cross(d1, p) for p in ip]
            k2 = [cross(p, d2) for p in ip]
        else:
            k1 = [cross(p, d2) for p in ip]
            k2 = [cross(d1, p) for p in ip]
        self.r1, self.v1 = _dense_rank(k1)
        self.r2, self.v2 = _dense_rank(k2)
        self.n1, self.n2 = len(self.v1) + 1, len(self.v2) + 1
        self._ra = np.asarray(self.r1, dtype=np.int64)
        self._rb = np.asarray(self.r2, dtype=np.int64)
        self.total = self.counts(np.ones(len(self.points), dtype=np.int64))

    def counts(self, weights) -> np.ndarray:
        """``out[i, j]`` = weight of the range with threshold ranks ``(i, j)``."""
        grid = np.zeros((self.n1 + 1, self.n2 + 1), dtype=np.int64)
        if len(self.points):
            np.add.at(grid, (self._ra, self._rb), np.asarray(weights, dtype=np.int64))
        dom = grid[::-1, ::-1].cumsum(0).cumsum(1)[::-1, ::-1][: self.n1, : self.n2]
        if not self.wedge.is_big:
            return dom
        return dom[:, :1] + dom[:1, :] - dom

    def members(self, i: int, j: int) -> list[int]:
        if self.wedge.is_big:
            return [q for q in range(len(self.points)) if self.r1[q] >= i or self.r2[q] >= j]
        return [q for q in range(len(self.points)) if self.r1[q] >= i and self.r2[q] >= j]

    def representative(self, i: int, j: int) -> PlacedWedge:
        """An open translate cutting off exactly ``members(i, j)``."""
        g1, g2 = _between(self.v1, i), _between(self.v2, j)
        if self.wedge.is_big:
            apex = apex_from_coords(self.wedge, g2, g1)
        else:
            apex = apex_from_coords(self.wedge, g1, g2)
        return PlacedWedge(self.wedge.with_closed(False), apex)

    def cells(self):
        return product(range(self.n1), range(self.n2))


class CanonicalRange(NamedTuple):
    subset: frozenset
    translate: PlacedWedge


@dataclass
class CanonicalRangeSet:
    ranges: list[CanonicalRange]

    def subsets(self) -> set[frozenset]:
        return {r.subset for r in self.ranges}

    def __len__(self):
        return len(self.ranges)


def canonical_wedge_ranges(points: Sequence, wedge: Wedge) -> CanonicalRangeSet:
    """One entry per distinct subset cut off by a translate of ``wedge``."""
    wr = WedgeRanges(points, wedge)
    seen = {}
    for i, j in wr.cells():
        s = frozenset(wr.members(i, j))
        if s not in seen:
            seen[s] = CanonicalRange(s, wr.representative(i, j))
    return CanonicalRangeSet(sorted(seen.values(), key=lambda r: (len(r.subset), sorted(r.subset))))


def ranges_of_size(points: Sequence, wedge: Wedge, k: int, wr: WedgeRanges | None = None) -> list[frozenset]:
    """Distinct subsets of exactly ``k`` points cut off by translates of ``wedge``."""
    wr = wr or WedgeRanges(points, wedge)
    out = set()
    for i, j in zip(*np.nonzero(wr.total == k)):
        out.add(frozenset(wr.members(int(i), int(j))))
    return sorted(out, key=sorted)


# ---------------------------------------------------------------------------
# Coloring verification


class Requirement(NamedTuple):
    """Translates of ``wedge`` with at least ``threshold`` points must satisfy ``need``.

    ``need`` is ``"both"`` (bichromatic), ``"red"`` or ``"blue"`` (contains that color).
    """

    wedge: Wedge
    threshold: int
    need: str = "both"


class Violation(NamedTuple):
    requirement: int
    subset: tuple
    translate: PlacedWedge

    def __str__(self):
        return f"requirement {self.requirement}: range {list(self.subset)} via apex {tuple(map(str, self.translate.apex))}"


def _bad_mask(wr: WedgeRanges, colors, need: str) -> np.ndarray:
    red = wr.counts([1 if c == RED else 0 for c in colors])
    blue = wr.total - red
    if need == "red":
        return red == 0
    if need == "blue":
        return blue == 0
    if need == "both":
        return (red == 0) | (blue == 0)
    raise ValueError(f"unknown requirement {need!r}")


def largest_bad_range(points: Sequence, colors: Sequence[int], wedge: Wedge, need: str = "both",
                      wr: WedgeRanges | None = None) -> int:
    """Size of the largest range violating ``need``; 0 when none is nonempty."""
    wr = wr or WedgeRanges(points, wedge)
    if not len(points):
        return 0
    bad = _bad_mask(wr, colors, need)
    sizes = np.where(bad, wr.total, 0)
    return int(sizes.max())


def verified_threshold(points, colors, wedge, need="both") -> int:
    """Smallest threshold at which the coloring passes for ``wedge``."""
    return largest_bad_range(points, colors, wedge, need) + 1


def verify_coloring(points: Sequence, colors: Sequence[int], requirements: Sequence) -> Violation | None:
    """``None`` when every requirement holds, else the first concrete violation."""
    for idx, req in enumerate(requirements):
        req = Requirement(*req)
        wr = WedgeRanges(points, req.wedge)
        bad = _bad_mask(wr, colors, req.need) & (wr.total >= req.threshold) & (wr.total > 0)
        hits = np.argwhere(bad)
        if len(hits):
            i, j = (int(x) for x in hits[0])
            return Violation(idx, tuple(wr.members(i, j)), wr.representative(i, j))
    return None


def verify_anc(points, colors, v: Wedge, w: Wedge, tv: int, tw: int) -> Violation | None:
    """Large ``v`` translates hold a red point, large ``w`` translates a blue one."""
    return verify_coloring(points, colors, [Requirement(v, tv, "red"), Requirement(w, tw, "blue")])


def partition_threshold(points: Sequence, part: Sequence[int], wedge: Wedge, strength: int,
                        wr: WedgeRanges | None = None) -> int:
    """Smallest ``m`` such that every translate with at least ``m`` points has
    at least ``strength`` of them in ``part``."""
    wr = wr or WedgeRanges(points, wedge)
    member = np.zeros(len(points), dtype=np.int64)
    member[list(part)] = 1
    inside = wr.counts(member)
    bad = np.where(inside < strength, wr.total, -1)
    return int(bad.max()) + 1 if bad.size else 0


def verify_partition(points: Sequence, parts: Sequence[Sequence[int]], wedges: Sequence[Wedge],
                     threshold: int, strength: int) -> Violation | None:
    """Every translate of ``wedges[i]`` with ``threshold`` points keeps ``strength`` in ``parts[i]``."""
    for i, (part, w) in enumerate(zip(parts, wedges)):
        wr = WedgeRanges(points, w)
        member = np.zeros(len(points), dtype=np.int64)
        member[list(part)] = 1
        hits = np.argwhere((wr.counts(member) < strength) & (wr.total >= threshold))
        if len(hits):
            a, b = (int(x) for x in hits[0])
            return Violation(i, tuple(wr.members(a, b)), wr.representative(a, b))
    return None


# ---------------------------------------------------------------------------
# Exhaustive colorings


MAX_EXHAUSTIVE = 20


def _all_range_masks(points, wedges) -> list[tuple[int, int]]:
    """Distinct (bitmask, size) of every nonempty canonical range over all wedges."""
    masks = set()
    for w in wedges:
        wr = WedgeRanges(points, w)
        for i, j in wr.cells():
            m = 0
            for q in wr.members(i, j):
                m |= 1 << q
            if m:
                masks.add(m)
    return sorted((m, bin(m).count("1")) for m in masks)


def _coloring_exists(n: int, masks: Sequence[int]) -> int | None:
    """Some red-bitmask coloring of ``n`` points with no monochromatic mask, else None."""
    full = (1 << n) - 1
    chunk = 1 << 20
    for start in range(0, 1 << n, chunk):
        c = np.arange(start, min(1 << n, start + chunk), dtype=np.int64)
        ok = np.ones(len(c), dtype=bool)
        for m in masks:
            ok &= ((c & m) != m) & (((full ^ c) & m) != m)
            if not ok.any():
                break
        if ok.any():
            return int(c[np.argmax(ok)])
    return None


def min_nc_constant(points: Sequence, wedges: Sequence[Wedge]) -> int | None:
    """Smallest threshold admitting a valid 2-coloring; ``None`` if none up to ``n``."""
    n = len(points)
    if n > MAX_EXHAUSTIVE:
        raise TooLarge(f"exhaustive search limited to {MAX_EXHAUSTIVE} points")
    ranges = _all_range_masks(points, wedges)
    for m in range(1, n + 2):
        relevant = [mask for mask, size in ranges if size >= m]
        if _coloring_exists(n, relevant) is not None:
            return m if m <= n else None
    return None  # pragma: no cover


def colors_from_mask(n: int, red_mask: int) -> list[int]:
    return [RED if red_mask >> q & 1 else BLUE for q in range(n)]


# ---------------------------------------------------------------------------
# Coverings by polygon translates
#
# The points of a closed box covered fewer than ``fold`` times by open
# polygons form a compact set.  Its lexicographically smallest point is a
# vertex of the arrangement formed by the polygon edges and the box sides, so
# checking those vertices decides coverage exactly.


class Region(NamedTuple):
    x0: Fraction
    y0: Fraction
    x1: Fraction
    y1: Fraction

    @classmethod
    def of(cls, x0, y0, x1, y1) -> "Region":
        from .geometry import rat
        r = cls(rat(x0), rat(y0), rat(x1), rat(y1))
        if r.x0 > r.x1 or r.y0 > r.y1:
            raise ValueError("empty region")
        return r

    def corners(self):
        return [(self.x0, self.y0), (self.x1, self.y0), (self.x1, self.y1), (self.x0, self.y1)]


class CoverageGap(NamedTuple):
    """A point of the region covered fewer than ``fold`` times."""

    point: tuple
    count: int
    fold: int


def _lcm_denominators(values) -> int:
    from math import lcm
    d = 1
    for v in values:
        d = lcm(d, Fraction(v).denominator)
    return d


_INT64_SAFE = 1 << 62


class _ScaledCover:
    """Translates and region scaled to integers and bucketed on a uniform grid.

    Arithmetic runs in numpy ``int64`` when a crude magnitude bound shows it
    cannot overflow, and on Python integers otherwise.
    """

    def __init__(self, polygon, centers, region: Region):
        from .classify import is_convex
        g = polygon.centroid()
        offsets = [(Fraction(c[0]) - g.x, Fraction(c[1]) - g.y) for c in centers]
        vals = [x for v in polygon.vertices for x in v] + [x for o in offsets for x in o] + list(region)
        D = _lcm_denominators(vals)
        self.D = D
        self.polygon = polygon
        self.offsets = offsets
        self.convex = is_convex(polygon)
        base = [(int(v.x * D), int(v.y * D)) for v in polygon.vertices]
        self.base = base
        self.shift = [(int(ox * D), int(oy * D)) for ox, oy in offsets]
        self.box = tuple(int(x * D) for x in region)
        xs = [p[0] for p in base]
        ys = [p[1] for p in base]
        self.cell = max(max(xs) - min(xs), max(ys) - min(ys), 1)
        self.bbox = [(min(xs) + sx, min(ys) + sy, max(xs) + sx, max(ys) + sy) for sx, sy in self.shift]
        # finer buckets for point location
        self.fine = max(self.cell // 4, 1)
        self.buckets: dict[tuple[int, int], list[int]] = {}
        for i, (a, b, c, d) in enumerate(self.bbox):
            for bx in range(a // self.fine, c // self.fine + 1):
                for by in range(b // self.fine, d // self.fine + 1):
                    self.buckets.setdefault((bx, by), []).append(i)
        coords = [abs(x) for x in self.box] + [abs(x) + abs(y) for x, y in self.shift] + [1]
        span = max(coords) + 2 * max(abs(x) + abs(y) for x, y in base)
        edge = 2 * max(abs(x) + abs(y) for x, y in base) + 2 * span
        # intersection denominators are at most edge**2; numerators span * edge**2
        self.fast = span * edge ** 3 * 16 < _INT64_SAFE

    # -- witnesses -------------------------------------------------------

    def _segments(self):
        x0, y0, x1, y1 = self.box
        k = len(self.base)
        out = []
        for i, (sx, sy) in enumerate(self.shift):
            a, b, c, d = self.bbox[i]
            if c < x0 or a > x1 or d < y0 or b > y1:
                continue
            for j in range(k):
                px, py = self.base[j]
                qx, qy = self.base[(j + 1) % k]
                out.append((i, px + sx, py + sy, qx - px, qy - py))
        box = [(x0, y0, x1 - x0, 0), (x1, y0, 0, y1 - y0), (x1, y1, x0 - x1, 0), (x0, y1, 0, y0 - y1)]
        for j, (px, py, rx, ry) in enumerate(box):
            if rx or ry:
                out.append((-1 - j, px, py, rx, ry))
        return out

    def witnesses(self) -> list[tuple[int, int, int]]:
        x0, y0, x1, y1 = self.box
        found = {(x0, y0, 1), (x1, y0, 1), (x1, y1, 1), (x0, y1, 1)}
        for sx, sy in self.shift:
            for bx, by in self.base:
                X, Y = bx + sx, by + sy
                if x0 <= X <= x1 and y0 <= Y <= y1:
                    found.add((X, Y, 1))
        segs = self._segments()
        buckets: dict[tuple[int, int], list[int]] = {}
        c = self.cell
        for n, (_, px, py, rx, ry) in enumerate(segs):
            if min(px, px + rx) < x0 - c or max(px, px + rx) > x1 + c or \
                    min(py, py + ry) < y0 - c or max(py, py + ry) > y1 + c:
                # long sides of the region: pair them with everything nearby
                for bx in range(max(min(px, px + rx), x0 - c) // c, min(max(px, px + rx), x1 + c) // c + 1):
                    for by in range(max(min(py, py + ry), y0 - c) // c, min(max(py, py + ry), y1 + c) // c + 1):
                        buckets.setdefault((bx, by), []).append(n)
                continue
            for bx in range(min(px, px + rx) // c, max(px, px + rx) // c + 1):
                for by in range(min(py, py + ry) // c, max(py, py + ry) // c + 1):
                    buckets.setdefault((bx, by), []).append(n)
        for members in buckets.values():
            found.update(self._pair_hits([segs[n] for n in members]))
        return sorted(found)

    def _pair_hits(self, segs):
        if len(segs) < 2:
            return []
        if not self.fast:
            out = []
            for a in range(len(segs)):
                for b in range(a + 1, len(segs)):
                    if segs[a][0] == segs[b][0]:
                        continue
                    ia, px, py, rx, ry = segs[a]
                    ib, qx, qy, sx, sy = segs[b]
                    hit = _intersect((px, py), (px + rx, py + ry), (qx, qy), (qx + sx, qy + sy))
                    if hit and self.in_box(*hit):
                        out.append(hit)
            return out
        arr = np.asarray(segs, dtype=np.int64)
        own, px, py, rx, ry = (arr[:, k] for k in range(5))
        ia, ib = np.triu_indices(len(segs), 1)
        keep = own[ia] != own[ib]
        ia, ib = ia[keep], ib[keep]
        den = rx[ia] * ry[ib] - ry[ia] * rx[ib]
        wx, wy = px[ib] - px[ia], py[ib] - py[ia]
        t = wx * ry[ib] - wy * rx[ib]
        u = wx * ry[ia] - wy * rx[ia]
        sign = np.where(den < 0, -1, 1)
        den, t, u = den * sign, t * sign, u * sign
        ok = (den != 0) & (t >= 0) & (t <= den) & (u >= 0) & (u <= den)
        ia, den, t = ia[ok], den[ok], t[ok]
        X = px[ia] * den + t * rx[ia]
        Y = py[ia] * den + t * ry[ia]
        g = np.gcd(np.gcd(X, Y), den)
        X, Y, den = X // g, Y // g, den // g
        x0, y0, x1, y1 = self.box
        inb = (X >= x0 * den) & (X <= x1 * den) & (Y >= y0 * den) & (Y <= y1 * den)
        return list(zip(X[inb].tolist(), Y[inb].tolist(), den[inb].tolist()))

    def in_box(self, X, Y, d) -> bool:
        x0, y0, x1, y1 = self.box
        return x0 * d <= X <= x1 * d and y0 * d <= Y <= y1 * d

    # -- coverage counts -------------------------------------------------

    def counts(self, wit: list[tuple[int, int, int]]) -> list[int]:
        """Number of translates strictly containing each witness."""
        groups: dict[tuple[int, int], list[int]] = {}
        for n, (X, Y, d) in enumerate(wit):
            groups.setdefault(((X // d) // self.fine, (Y // d) // self.fine), []).append(n)
        out = [0] * len(wit)
        for key, members in groups.items():
            cands = self.buckets.get(key, [])
            if not cands:
                continue
            if self.fast and self.convex:
                res = self._count_block([wit[n] for n in members], cands)
            else:
                res = [sum(1 for i in cands if self._inside(i, *wit[n])) for n in members]
            for n, v in zip(members, res):
                out[n] = int(v)
        return out

    def _count_block(self, pts, cands):
        P = np.asarray(pts, dtype=np.int64)
        X, Y, d = P[:, 0:1], P[:, 1:2], P[:, 2:3]
        S = np.asarray([self.shift[i] for i in cands], dtype=np.int64)
        inside = np.ones((len(pts), len(cands)), dtype=bool)
        k = len(self.base)
        for j in range(k):
            ax, ay = self.base[j]
            bx, by = self.base[(j + 1) % k]
            ex, ey = bx - ax, by - ay
            vx = ax + S[:, 0][None, :]
            vy = ay + S[:, 1][None, :]
            inside &= ex * (Y - vy * d) - ey * (X - vx * d) > 0
        return inside.sum(axis=1)

    def _inside(self, i, X, Y, d) -> bool:
        a, b, c, e = self.bbox[i]
        if not (a * d < X < c * d and b * d < Y < e * d):
            return False
        sx, sy = self.shift[i]
        k = len(self.base)
        if self.convex:
            for j in range(k):
                ax, ay = self.base[j]
                bx, by = self.base[(j + 1) % k]
                if (bx - ax) * (Y - (ay + sy) * d) - (by - ay) * (X - (ax + sx) * d) <= 0:
                    return False
            return True
        # crossing number on the scaled integers; boundary points are outside
        inside = False
        for j in range(k):
            ax, ay = (self.base[j][0] + sx) * d, (self.base[j][1] + sy) * d
            bx, by = (self.base[(j + 1) % k][0] + sx) * d, (self.base[(j + 1) % k][1] + sy) * d
            if (bx - ax) * (Y - ay) == (by - ay) * (X - ax) and \
                    min(ax, bx) <= X <= max(ax, bx) and min(ay, by) <= Y <= max(ay, by):
                return False
            if (ay > Y) != (by > Y):
                # X lies left of the edge crossing at height Y
                lhs = (X - ax) * (by - ay)
                rhs = (Y - ay) * (bx - ax)
                if (lhs < rhs) == (by > ay):
                    inside = not inside
        return inside


def _intersect(p, p2, q, q2):
    """The single intersection point of two closed integer segments as ``(X, Y, d)``."""
    from math import gcd
    rx, ry = p2[0] - p[0], p2[1] - p[1]
    sx, sy = q2[0] - q[0], q2[1] - q[1]
    den = rx * sy - ry * sx
    if den == 0:
        return None
    wx, wy = q[0] - p[0], q[1] - p[1]
    t = wx * sy - wy * sx
    u = wx * ry - wy * rx
    if den < 0:
        den, t, u = -den, -t, -u
    if not (0 <= t <= den and 0 <= u <= den):
        return None
    X, Y = p[0] * den + t * rx, p[1] * den + t * ry
    g = gcd(gcd(X, Y), den)
    return X // g, Y // g, den // g


def verify_covering(polygon, centers: Sequence, region: Region, fold: int = 1) -> CoverageGap | None:
    """``None`` when every point of the closed ``region`` lies in at least
    ``fold`` of the open translates ``polygon - centroid + c``; otherwise the
    lexicographically smallest point covered fewer times."""
    if fold <= 0:
        return None
    if not centers:
        return CoverageGap((region.x0, region.y0), 0, fold)
    sc = _ScaledCover(polygon, centers, region)
    wit = sc.witnesses()
    gaps = [CoverageGap((Fraction(X, d * sc.D), Fraction(Y, d * sc.D)), n, fold)
            for (X, Y, d), n in zip(wit, sc.counts(wit)) if n < fold]
    return min(gaps) if gaps else None


def min_coverage(polygon, centers: Sequence, region: Region) -> int:
    """Exact minimum number of translates covering a point of ``region``."""
    if not centers:
        return 0
    sc = _ScaledCover(polygon, centers, region)
    return min(sc.counts(sc.witnesses()))
