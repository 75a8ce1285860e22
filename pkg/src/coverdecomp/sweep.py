"""W-boundaries, shadows and order-k path decompositions.

Everything runs in the sweep frame of a convex wedge ``W``: with ``h`` a
direction strictly inside ``W`` each point gets two integer keys ``A`` and
``B`` (positive multiples of its coordinates along the sides of ``W``) so that

* ``q`` lies in the open translate ``W(p)`` iff ``A_q > A_p`` and ``B_q > B_p``;
* the y-coordinate perpendicular to ``h`` is ``B - A``.

The translate ``W(k; y)`` then holds the ``k`` points of largest
``min(A_p, B_p - y)``; two such keys cross at most once, so sweeping ``y``
is a kinetic sorted list where each event swaps two neighbours.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import AngleTooLarge, DegenerateSweep, NotBoundaryPoint, TooFewPoints
from .geometry import Point, Wedge, cross, integer_coords


class Frame:
    """Sweep keys of a point set for one convex wedge."""

    def __init__(self, points: Sequence, wedge: Wedge, h=None, scaled=None):
        if wedge.is_big:
            raise AngleTooLarge("sweep structures need a wedge below pi")
        self.points = list(points)
        self.wedge = wedge
        d1, d2 = wedge.dir1, wedge.dir2
        h = wedge.bisector() if h is None else h
        c1, c2 = -cross(h, d1), cross(h, d2)
        if c1 <= 0 or c2 <= 0:
            raise ValueError("sweep direction must lie strictly inside the wedge")
        self.h = h
        ip = scaled if scaled is not None else integer_coords(self.points)
        self.A = [c1 * cross(p, d2) for p in ip]
        self.B = [c2 * cross(d1, p) for p in ip]

    def __len__(self):
        return len(self.points)

    def y(self, i):
        return self.B[i] - self.A[i]

    def y_sorted(self, idx):
        return sorted(idx, key=lambda i: (self.y(i), self.B[i]))

    def in_translate(self, apex_index: int, q: int, closed: bool = False) -> bool:
        """Whether point ``q`` lies in the translate of the wedge at point ``apex_index``."""
        if closed:
            return self.A[q] >= self.A[apex_index] and self.B[q] >= self.B[apex_index]
        return self.A[q] > self.A[apex_index] and self.B[q] > self.B[apex_index]


def boundary_indices(frame: Frame, idx: Sequence[int] | None = None) -> list[int]:
    """Points of ``idx`` whose own translate holds no other point, in y-order."""
    idx = list(range(len(frame))) if idx is None else list(idx)
    closed = frame.wedge.closed
    A, B = frame.A, frame.B
    order = sorted(idx, key=lambda i: -A[i])
    out = []
    best = None  # max B over strictly larger A
    k = 0
    while k < len(order):
        group = [order[k]]
        while k + len(group) < len(order) and A[order[k + len(group)]] == A[order[k]]:
            group.append(order[k + len(group)])
        gmax = max(B[i] for i in group)
        for i in group:
            if closed:
                dominated = (best is not None and best >= B[i]) or \
                    sum(1 for j in group if B[j] >= B[i]) > 1
            else:
                dominated = best is not None and best > B[i]
            if not dominated:
                out.append(i)
        best = gmax if best is None else max(best, gmax)
        k += len(group)
    return sorted(out, key=lambda i: (B[i], -A[i]))


def boundary(points: Sequence, w: Wedge) -> list[Point]:
    frame = Frame(points, w)
    return [frame.points[i] for i in boundary_indices(frame)]


def shadow_indices(frame: Frame, x: int, idx: Sequence[int] | None = None,
                   bd: Sequence[int] | None = None) -> list[int]:
    idx = list(range(len(frame))) if idx is None else list(idx)
    bd = boundary_indices(frame, idx) if bd is None else bd
    if x not in bd:
        raise NotBoundaryPoint(f"point {x} is not on the boundary")
    out = []
    for y in idx:
        hit = [b for b in bd if b != y and frame.in_translate(y, b)]
        if hit == [x]:
            out.append(y)
    return out


def shadows(frame: Frame, idx: Sequence[int] | None = None) -> dict[int, list[int]]:
    """Shadow of every boundary point, computed in one pass."""
    idx = list(range(len(frame))) if idx is None else list(idx)
    bd = boundary_indices(frame, idx)
    bset = set(bd)
    out = {b: [] for b in bd}
    for y in idx:
        if y in bset:
            continue
        hit = [b for b in bd if frame.in_translate(y, b)]
        if len(hit) == 1:
            out[hit[0]].append(y)
    return out


def shadow(points: Sequence, w: Wedge, x) -> set[Point]:
    frame = Frame(points, w)
    pts = frame.points
    if x not in pts:
        raise NotBoundaryPoint("point is not in the set")
    return {pts[i] for i in shadow_indices(frame, pts.index(x))}


@dataclass
class PathDecomposition:
    order: int
    paths: list[list[int]]
    rest: list[int]
    wedge: Wedge
    replacements: list[tuple[int, int]] = field(default_factory=list)

    def path_of(self) -> dict[int, int]:
        return {q: j for j, path in enumerate(self.paths) for q in path}


def path_decomposition_indices(frame: Frame, k: int, idx: Sequence[int] | None = None,
                               pad: bool = False) -> PathDecomposition:
    """Order-``k`` path decomposition of the points ``idx`` in the frame.

    With ``pad`` a set of at most ``k`` points is accepted: every point is its
    own path and the remaining (empty) paths are left out of ``paths``.
    """
    idx = list(range(len(frame))) if idx is None else list(idx)
    if k < 1:
        raise ValueError("order must be positive")
    A, B = frame.A, frame.B
    if len(idx) <= k:
        if len(idx) < k and not pad:
            raise TooFewPoints(f"{len(idx)} points for a decomposition of order {k}")
        ordered = sorted(idx, key=lambda i: -A[i])
        paths = [[i] for i in ordered]
        return PathDecomposition(k, paths, [], frame.wedge)
    # as y -> -infinity the key of p is A_p
    ranking = sorted(idx, key=lambda i: -A[i])
    for a, b in zip(ranking, ranking[1:]):
        if A[a] == A[b]:
            raise DegenerateSweep("two points share a side coordinate")
    events = []
    for p in idx:
        for q in idx:
            if A[q] > A[p] and B[q] < B[p]:
                # p overtakes q when A_p = B_q - y
                events.append((B[q] - A[p], p, q))
    events.sort()
    pos = {i: r for r, i in enumerate(ranking)}
    paths = [[i] for i in ranking[:k]]
    path_id = {i: j for j, i in enumerate(ranking[:k])}
    replacements = []
    e = 0
    while e < len(events):
        y = events[e][0]
        group = [events[e]]
        while e + len(group) < len(events) and events[e + len(group)][0] == y:
            group.append(events[e + len(group)])
        touched = [x for _, p, q in group for x in (p, q)]
        if len(set(touched)) != len(touched):
            raise DegenerateSweep(f"simultaneous crossings at y={y}")
        for _, p, q in group:
            rp, rq = pos[p], pos[q]
            if rq != rp - 1:
                raise DegenerateSweep(f"non-adjacent crossing at y={y}")
            ranking[rq], ranking[rp] = p, q
            pos[p], pos[q] = rq, rp
            if rq == k - 1:
                # p enters W(k; y) and replaces q
                j = path_id.pop(q)
                path_id[p] = j
                paths[j].append(p)
                replacements.append((q, p))
        e += len(group)
    on_path = {q for path in paths for q in path}
    rest = [q for q in idx if q not in on_path]
    return PathDecomposition(k, paths, frame.y_sorted(rest), frame.wedge, replacements)


def path_decomposition(points: Sequence, w: Wedge, k: int, pad: bool = False) -> PathDecomposition:
    return path_decomposition_indices(Frame(points, w), k, pad=pad)
