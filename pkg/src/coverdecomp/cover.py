"""Splitting a multiple covering by translates of a convex polygon.

A translate is recorded by its center ``c``: it is the open polygon
``P - g + c`` where ``g`` is the centroid of ``P``.  A point ``x`` lies in the
translate at ``c`` exactly when ``c`` lies in ``Q + x`` with ``Q = -(P - g)``,
so coloring the centers so that every translate of ``Q`` holding many centers
is bichromatic splits the covering.  Centers are colored cell by cell on a
grid fine enough that inside one cell every translate of ``Q`` looks like a
translate of one of its vertex wedges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .classify import find_special_pair, is_convex
from .coloring import RED, color_wedge_system, f_internal, partition_multi
from .errors import FoldTooSmall, NotConvex, SpecialPairPresent
from .geometry import Point, Polygon, polygon_wedges, rat, reflect_polygon, rotate_to_general_position
from .oracle import Region, min_coverage, verify_covering
from .sweep import Frame, path_decomposition_indices

PI_UPPER = Fraction(355, 113)


@dataclass
class CoverInstance:
    polygon: Polygon
    centers: list[Point]
    region: Region
    fold: int

    def translate(self, i: int) -> Polygon:
        g = self.polygon.centroid()
        return self.polygon.translated(self.centers[i] - g)


def dualize(c: CoverInstance) -> tuple[list[Point], Polygon]:
    """Centers and the reflected, centroid-anchored polygon."""
    g = c.polygon.centroid()
    return list(c.centers), reflect_polygon(c.polygon.translated(-g))


def sqrt_bounds(q: Fraction, bits: int = 48) -> tuple[Fraction, Fraction]:
    """Rational ``lo <= sqrt(q) <= hi``; equal when ``q`` is a rational square."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative argument")
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd), Fraction(rn, rd)
    scale = 1 << bits
    lo = Fraction(math.isqrt(q.numerator * scale * scale // q.denominator), scale)
    return lo, lo + Fraction(1, scale)


def _dist2_point_segment(p: Point, a: Point, b: Point) -> Fraction:
    ab = b - a
    ap = p - a
    t = (ap.x * ab.x + ap.y * ab.y) / (ab.x * ab.x + ab.y * ab.y)
    t = min(max(t, Fraction(0)), Fraction(1))
    dx, dy = ap.x - t * ab.x, ap.y - t * ab.y
    return dx * dx + dy * dy


@dataclass(frozen=True)
class GridParams:
    m2: Fraction          # squared vertex to non-adjacent side distance
    m: Fraction           # rational lower bound for sqrt(m2)
    cell: Fraction
    diam: Fraction        # rational upper bound for the diameter
    K: int


def grid_params(p: Polygon) -> GridParams:
    """Grid cell ``m/2`` and the bound ``K`` on cells met by one translate."""
    if not is_convex(p):
        raise NotConvex("grid parameters need a convex polygon")
    vs = p.vertices
    n = len(vs)
    m2 = None
    for i, v in enumerate(vs):
        for j in range(n):
            if i in (j, (j + 1) % n):
                continue
            d2 = _dist2_point_segment(v, vs[j], vs[(j + 1) % n])
            m2 = d2 if m2 is None else min(m2, d2)
    m_lo, m_hi = sqrt_bounds(m2)
    diam2 = max((a.x - b.x) ** 2 + (a.y - b.y) ** 2 for a in vs for b in vs)
    diam = sqrt_bounds(diam2)[1]
    cell = m_lo / 2
    K = math.ceil(PI_UPPER * (diam + m_hi) ** 2 / cell ** 2)
    return GridParams(m2, m_lo, cell, diam, K)


def cell_of(pt: Point, cell: Fraction) -> tuple[int, int]:
    return math.floor(pt.x / cell), math.floor(pt.y / cell)


def group_by_cell(points: Sequence[Point], cell: Fraction) -> dict[tuple[int, int], list[int]]:
    out: dict[tuple[int, int], list[int]] = {}
    for i, pt in enumerate(points):
        out.setdefault(cell_of(pt, cell), []).append(i)
    return dict(sorted(out.items()))


@dataclass
class CoverDecomposition:
    classes: list[int]                  # class label 1..s per center
    s: int
    k: int                              # per-cell fold threshold
    K: int
    required_fold: int
    cells: list[dict] = field(default_factory=list)
    coverage: list[bool] | None = None  # per class, when verified

    def members(self, label: int) -> list[int]:
        return [i for i, c in enumerate(self.classes) if c == label]


POLICIES = ("guaranteed", "unchecked")


def _prepare(c: CoverInstance, k: int, policy: str):
    if policy not in POLICIES:
        raise ValueError(f"policy must be one of {POLICIES}")
    if not is_convex(c.polygon):
        raise NotConvex("the covering polygon must be convex")
    points, dual = dualize(c)
    ws = polygon_wedges(dual)
    pair = find_special_pair(dual)
    if pair is not None:  # pragma: no cover - convex polygons have none
        raise SpecialPairPresent(*pair)
    gp = grid_params(dual)
    required = k * gp.K
    if policy == "guaranteed" and c.fold < required:
        raise FoldTooSmall(required, c.fold)
    return points, ws, gp, required


def _cells(points, ws, gp, seed):
    for key, idx in group_by_cell(points, gp.cell).items():
        _, local = rotate_to_general_position([points[i] for i in idx], ws, seed=seed)
        yield key, idx, local


def _verify_classes(c: CoverInstance, dec: CoverDecomposition) -> None:
    dec.coverage = [verify_covering(c.polygon, [c.centers[i] for i in dec.members(label)], c.region) is None
                    for label in range(1, dec.s + 1)]


def decompose_cover(c: CoverInstance, policy: str = "guaranteed", verify: bool = True,
                    seed: int = 0) -> CoverDecomposition:
    """Split the covering into two coverings, cell by cell.

    ``policy="guaranteed"`` refuses folds below ``k * K``; ``"unchecked"`` runs
    anyway, and the coverage check then reports what actually happened.
    """
    n = len(c.polygon)
    k = f_internal(3, n)
    points, ws, gp, required = _prepare(c, k, policy)
    classes = [1] * len(points)
    cells = []
    for key, idx, local in _cells(points, ws, gp, seed):
        res = color_wedge_system(local, ws, verify=verify)
        for i, col in zip(idx, res.colors):
            classes[i] = 1 if col == RED else 2
        cells.append({"cell": key, "points": len(idx), "threshold": res.thresholds()[0],
                      "verified": res.info.get("verified")})
    dec = CoverDecomposition(classes, 2, k, gp.K, required, cells)
    if verify:
        _verify_classes(c, dec)
    return dec


def decompose_cover_s(c: CoverInstance, s: int, policy: str = "guaranteed", verify: bool = True,
                      seed: int = 0) -> CoverDecomposition:
    """Split the covering into ``s`` coverings.

    Each cell is partitioned with strength ``s`` (one part per vertex wedge);
    inside part ``i`` the order-``s`` path decomposition for wedge ``i`` gives
    the classes: path ``j`` goes to class ``j + 1``, unused points to class 1.
    A wedge translate with ``s`` points of its part meets every path.
    """
    if s < 2:
        raise ValueError("s must be at least 2")
    if s == 2:
        return decompose_cover(c, policy, verify, seed)
    n = len(c.polygon)
    k = f_internal(s, n)
    points, ws, gp, required = _prepare(c, k, policy)
    classes = [1] * len(points)
    cells = []
    for key, idx, local in _cells(points, ws, gp, seed):
        part = partition_multi(local, ws, s)
        for w, members in zip(ws, part.parts):
            if not members:
                continue
            sub = [local[q] for q in members]
            pd = path_decomposition_indices(Frame(sub, w), s, pad=True)
            for j, path in enumerate(pd.paths):
                for q in path:
                    classes[idx[members[q]]] = j + 1
        cells.append({"cell": key, "points": len(idx), "threshold": part.threshold})
    dec = CoverDecomposition(classes, s, k, gp.K, required, cells)
    if verify:
        _verify_classes(c, dec)
    return dec


def lattice_cover(polygon: Polygon, region: Region, spacing, jitter: int = 0, seed: int = 0) -> CoverInstance:
    """Translates centered on a square lattice (optionally jittered by exact
    multiples of ``spacing / (4 * jitter)``) around ``region``; the fold is
    measured exactly."""
    import random
    spacing = rat(spacing)
    rng = random.Random(seed)
    g = polygon.centroid()
    vs = [v - g for v in polygon.vertices]
    lo_x = region.x0 - max(v.x for v in vs)
    hi_x = region.x1 - min(v.x for v in vs)
    lo_y = region.y0 - max(v.y for v in vs)
    hi_y = region.y1 - min(v.y for v in vs)
    centers = []
    i0, i1 = math.floor(lo_x / spacing), math.ceil(hi_x / spacing)
    j0, j1 = math.floor(lo_y / spacing), math.ceil(hi_y / spacing)
    for i in range(i0, i1 + 1):
        for j in range(j0, j1 + 1):
            x, y = i * spacing, j * spacing
            if jitter:
                x += spacing * rng.randint(-jitter, jitter) / (4 * jitter)
                y += spacing * rng.randint(-jitter, jitter) / (4 * jitter)
            centers.append(Point(x, y))
    fold = min_coverage(polygon, centers, region)
    return CoverInstance(polygon, centers, region, fold)
