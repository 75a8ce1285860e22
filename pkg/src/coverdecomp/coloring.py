"""Two-colorings of point sets with respect to translates of wedges.

Every colorer returns a :class:`ColoringResult`: the colors (``RED``/``BLUE``,
aligned with the input points) plus the requirements it guarantees, phrased so
that :func:`coverdecomp.oracle.verify_coloring` can check them directly.
Points the construction leaves unconstrained are colored red.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .classify import PairType, _region, classify_pair, cone_within
from .errors import SpecialPairPresent, VerificationFailed, WrongType
from .geometry import Direction, Wedge, cross, inner_direction, integer_coords
from .oracle import BLUE, RED, Requirement, ranges_of_size, verified_threshold, verify_coloring
from .sweep import Frame, boundary_indices, path_decomposition_indices, shadows


@dataclass
class ColoringResult:
    colors: list[int]
    requirements: list[Requirement]
    method: str
    info: dict = field(default_factory=dict)

    def thresholds(self) -> tuple[int, ...]:
        return tuple(r.threshold for r in self.requirements)


def flip(colors: Sequence[int]) -> list[int]:
    return [1 - c for c in colors]


def _sub(points, idx):
    return [points[i] for i in idx]


def _scatter(n, idx, sub_colors, into=None):
    out = [RED] * n if into is None else into
    for i, c in zip(idx, sub_colors):
        out[i] = c
    return out


def common_direction(wedges: Sequence[Wedge], closed: bool = False) -> "Direction | None":
    """A direction inside every given wedge (strictly unless ``closed``), if one exists."""
    sides = [d for w in wedges for d in w.sides]
    cands = [w.bisector() for w in wedges]
    for a, b in combinations(sides, 2):
        for x, y in ((a, b), (b, a)):
            if cross(x, y) > 0:
                cands.append(inner_direction(x, y))
    if closed:
        cands += sides
    for d in cands:
        if all(w.contains_offset(d, closed=closed) for w in wedges):
            return d
    return None


# ---------------------------------------------------------------------------
# A single wedge


def _single_convex(points, w: Wedge) -> list[int]:
    frame = Frame(points, w)
    bd = boundary_indices(frame)
    colors = [RED] * len(points)
    sh = shadows(frame)
    for pos, b in enumerate(bd):
        colors[b] = RED if pos % 2 == 0 else BLUE
        for y in sh[b]:
            colors[y] = 1 - colors[b]
    return colors


def _single_big(points, w: Wedge) -> list[int]:
    ip = integer_coords(points)
    n = len(points)
    colors = [RED] * n
    if n < 2:
        return colors
    k1 = sorted(range(n), key=lambda i: (-cross(w.dir1, ip[i]), i))
    k2 = sorted(range(n), key=lambda i: (-cross(ip[i], w.dir2), i))
    edges = [(k1[0], k1[1]), (k2[0], k2[1])]
    # two edges on at most four vertices never form an odd cycle
    seen = {}
    for a, b in edges:
        if a in seen and b in seen:
            continue
        if a in seen:
            seen[b] = 1 - seen[a]
        elif b in seen:
            seen[a] = 1 - seen[b]
        else:
            seen[a], seen[b] = RED, BLUE
    for i, c in seen.items():
        colors[i] = c
    return colors


def single_wedge_colors(points, w: Wedge) -> list[int]:
    if not points:
        return []
    return _single_big(points, w) if w.is_big else _single_convex(points, w)


def color_single_wedge(points: Sequence, w: Wedge) -> ColoringResult:
    """Every translate with at least 2 points (3 when the angle exceeds pi) is bichromatic."""
    colors = single_wedge_colors(list(points), w)
    threshold = 3 if w.is_big else 2
    return ColoringResult(colors, [Requirement(w, threshold, "both")], "single-wedge")


# ---------------------------------------------------------------------------
# Contain pairs


def _two_path_colors(p1: Sequence[int], p2: Sequence[int], pairs) -> dict[int, int]:
    """Color two paths so that every friend pair holds a blue point and every
    long stretch of either path is bichromatic.

    Stars are blue; the fans of a star alternate starting from red and the
    last fan is red; the other friends of a star are blue; the leftover
    regular points are colored with period three along the friendship
    staircase, red first.
    """
    pos = {q: i for i, q in enumerate(p1)}
    pos.update({q: i for i, q in enumerate(p2)})
    adj = {q: set() for q in list(p1) + list(p2)}
    for x, y in pairs:
        adj[x].add(y)
        adj[y].add(x)
    fans = {q for q, nb in adj.items() if len(nb) == 1}
    stars = {q for q, nb in adj.items() if nb & fans}
    color = {q: BLUE for q in stars}
    for s in sorted(stars, key=lambda q: (q in p2, pos[q])):
        friends = sorted(adj[s], key=pos.get)
        own = [q for q in friends if q in fans and q not in stars]
        # fans alternate from red and the last fan is red; a fan sitting at the
        # very end of a path is treated like any other fan
        for i, q in enumerate(own):
            color[q] = RED if i % 2 == 0 or i == len(own) - 1 else BLUE
        for q in friends:
            if q not in color:
                color[q] = BLUE
    # staircase order of all points: walk friend pairs by path positions
    staircase = []
    placed = set()
    for x, y in sorted(pairs, key=lambda e: (pos[e[0]], pos[e[1]])):
        for q in (x, y):
            if q not in placed:
                placed.add(q)
                staircase.append(q)
    for q in list(p1) + list(p2):
        if q not in placed:
            staircase.append(q)
    run = 0
    for q in staircase:
        if q in color:
            run = 0
            continue
        color[q] = RED if run % 3 == 0 else BLUE
        run += 1
    return color


def _contain_roles(v: Wedge, w: Wedge) -> tuple[Wedge, Wedge, bool]:
    """(container, contained, swapped) for a Contain pair."""
    if cone_within(v, w) or cone_within(v, w.reflected()):
        return w, v, False
    if cone_within(w, v) or cone_within(w, v.reflected()):
        return v, w, True
    raise WrongType("pair is not of type Contain")


def _paths_and_friends(points, big: Wedge, k: int = 4):
    frame = Frame(points, big)
    pd = path_decomposition_indices(frame, k, pad=True)
    pid = pd.path_of()
    friends = {(0, 1): set(), (2, 3): set()}
    for rng in ranges_of_size(points, big, k):
        ids = {pid.get(q): q for q in rng}
        for a, b in friends:
            if a in ids and b in ids:
                friends[(a, b)].add((ids[a], ids[b]))
    return pd, friends


def color_contain_pair(points: Sequence, v: Wedge, w: Wedge) -> ColoringResult:
    """Container translates with at least 4 points and contained-wedge
    translates with at least 14 points are bichromatic."""
    if classify_pair(v, w) is not PairType.CONTAIN:
        raise WrongType("pair is not of type Contain")
    big, small, _ = _contain_roles(v, w)
    points = list(points)
    reqs = [Requirement(big, 4, "both"), Requirement(small, 14, "both")]
    n = len(points)
    if n < 4:
        return ColoringResult([RED] * n, reqs, "contain")
    pd, friends = _paths_and_friends(points, big)
    colors = [RED] * n
    for (a, b), flip_colors in (((0, 1), False), ((2, 3), True)):
        part = _two_path_colors(pd.paths[a], pd.paths[b], friends[(a, b)])
        for q, c in part.items():
            colors[q] = 1 - c if flip_colors else c
    rest = pd.rest
    if rest:
        _scatter(n, rest, single_wedge_colors(_sub(points, rest), small), colors)
    return ColoringResult(colors, reqs, "contain", {"paths": pd.paths})


def _contain_anc(points, v: Wedge, w: Wedge) -> tuple[list[int], int, int]:
    """ANC coloring of a Contain pair: red in large ``v``, blue in large ``w`` translates."""
    big, small, swapped = _contain_roles(v, w)
    n = len(points)
    colors = [RED] * n
    if n >= 4:
        pd, friends = _paths_and_friends(points, big)
        for q, c in _two_path_colors(pd.paths[0], pd.paths[1], friends[(0, 1)]).items():
            colors[q] = c
    # big: >= 4 points hold blue; small: >= 8 points hold red
    if swapped:
        return flip(colors), 4, 8
    return colors, 8, 4


# ---------------------------------------------------------------------------
# Asymmetric colorings: red in large V translates, blue in large W translates


def _big_pair_colors(points, v: Wedge, w: Wedge) -> tuple[list[int], Wedge, Wedge]:
    """Red on the extreme point of each halfplane of the big wedge, blue elsewhere.

    Returns (colors, big, other): big translates with >= 1 point hold red,
    other translates with >= 3 points hold blue.
    """
    big, other = (v, w) if v.is_big else (w, v)
    n = len(points)
    colors = [BLUE] * n
    if n:
        ip = integer_coords(points)
        x1 = max(range(n), key=lambda i: (cross(big.dir1, ip[i]), -i))
        x2 = max(range(n), key=lambda i: (cross(ip[i], big.dir2), -i))
        colors[x1] = colors[x2] = RED
    return colors, big, other


def color_big_pair(points: Sequence, v: Wedge, w: Wedge) -> ColoringResult:
    if classify_pair(v, w) is not PairType.BIG:
        raise WrongType("pair is not of type Big")
    colors, big, other = _big_pair_colors(list(points), v, w)
    reqs = [Requirement(big, 1, "red"), Requirement(other, 3, "blue")]
    return ColoringResult(colors, reqs, "big")


def _halfplane_colors(points, v: Wedge, w: Wedge) -> tuple[list[int], list[Requirement], str]:
    n = len(points)
    fv, fw = Frame(points, v), Frame(points, w)
    bdv, bdw = set(boundary_indices(fv)), set(boundary_indices(fw))
    common = bdv & bdw
    if len(common) > 1:
        raise WrongType("Halfplane boundaries share more than one point")
    colors = [RED] * n
    if not common:
        for i in bdv:
            colors[i] = BLUE
        return colors, [Requirement(v, 1, "blue"), Requirement(w, 1, "red")], "disjoint"
    (x,) = common
    rest = sorted((bdv | bdw) - {x})
    bvp = {rest[i] for i in boundary_indices(Frame(_sub(points, rest), v))}
    bwp = {rest[i] for i in boundary_indices(Frame(_sub(points, rest), w))}
    shared = bvp & bwp
    if not shared or next(iter(shared)) in bdw:
        for i in bdv:
            colors[i] = BLUE
        case = "shared-x" if not shared else "shared-xy"
        return colors, [Requirement(v, 1, "blue"), Requirement(w, 2, "red")], case
    colors = [BLUE] * n
    for i in bdw:
        colors[i] = RED
    return colors, [Requirement(w, 1, "red"), Requirement(v, 2, "blue")], "shared-xy-swapped"


def color_halfplane_pair(points: Sequence, v: Wedge, w: Wedge) -> ColoringResult:
    """Translates of ``v`` hold blue and translates of ``w`` hold red (thresholds per case, at most 2)."""
    if classify_pair(v, w) is not PairType.HALFPLANE:
        raise WrongType("pair is not of type Halfplane")
    colors, reqs, case = _halfplane_colors(list(points), v, w)
    return ColoringResult(colors, reqs, "halfplane", {"case": case})


def _hard_colors(points, v: Wedge, w: Wedge) -> list[int]:
    """Red in ``v`` translates with >= 2 points, blue in ``w`` translates with >= 2 points."""
    n = len(points)
    h = common_direction([w, v.reflected()]) or common_direction([w, v.reflected()], closed=True)
    if h is None:
        raise WrongType("pair is not of type Hard")
    ip = integer_coords(points)
    fv, fw = Frame(points, v, scaled=ip), Frame(points, w, scaled=ip)
    bdv, bdw = set(boundary_indices(fv)), set(boundary_indices(fw))
    colors = [RED] * n
    for i in bdw - bdv:
        colors[i] = BLUE
    # the alternation runs upward when the non-Left side of v is above w and
    # downward in the mirror image
    regions = {_region(w, v.dir1, v.dir2), _region(w, v.dir2, v.dir1)}
    up = 1 if "U" in regions else -1
    common = sorted(bdv & bdw, key=lambda i: up * cross(h, ip[i]))
    prev = None
    for x in common:
        others = [i for i in range(n) if i != x]
        if set(boundary_indices(fv, others)) - bdv:
            c = RED
        elif set(boundary_indices(fw, others)) - bdw:
            c = BLUE
        else:
            c = RED if prev is None else 1 - prev
        colors[x] = c
        prev = c
    return colors


def color_hard_pair(points: Sequence, v: Wedge, w: Wedge) -> ColoringResult:
    if classify_pair(v, w) is not PairType.HARD:
        raise WrongType("pair is not of type Hard")
    colors = _hard_colors(list(points), v, w)
    return ColoringResult(colors, [Requirement(v, 2, "red"), Requirement(w, 2, "blue")], "hard")


@dataclass
class AncColoring:
    """Red in ``v`` translates with >= ``tv`` points, blue in ``w`` translates with >= ``tw``."""

    colors: list[int]
    v: Wedge
    w: Wedge
    tv: int
    tw: int
    method: str

    @property
    def threshold(self) -> int:
        return max(self.tv, self.tw)

    def requirements(self) -> list[Requirement]:
        return [Requirement(self.v, self.tv, "red"), Requirement(self.w, self.tw, "blue")]


def anc_coloring(points: Sequence, v: Wedge, w: Wedge) -> AncColoring:
    """Asymmetric coloring for any non-Special ordered pair."""
    points = list(points)
    kind = classify_pair(v, w)
    if kind is PairType.SPECIAL:
        raise SpecialPairPresent(0, 1)
    if kind is PairType.BIG:
        colors, big, _ = _big_pair_colors(points, v, w)
        if v.is_big:
            return AncColoring(colors, v, w, 1, 3, "big")
        return AncColoring(flip(colors), v, w, 3, 1, "big")
    if kind is PairType.HALFPLANE:
        colors, reqs, case = _halfplane_colors(points, v, w)
        # v holds blue and w holds red; swap colors to match the orientation
        tv = next(r.threshold for r in reqs if r.wedge is v)
        tw = next(r.threshold for r in reqs if r.wedge is w)
        return AncColoring(flip(colors), v, w, tv, tw, f"halfplane/{case}")
    if kind is PairType.HARD:
        if common_direction([w, v.reflected()], closed=True) is not None:
            return AncColoring(_hard_colors(points, v, w), v, w, 2, 2, "hard")
        return AncColoring(flip(_hard_colors(points, w, v)), v, w, 2, 2, "hard")
    colors, tv, tw = _contain_anc(points, v, w)
    return AncColoring(colors, v, w, tv, tw, "contain")


# ---------------------------------------------------------------------------
# From asymmetric to symmetric colorings


def nc_bound(anc_threshold: int) -> int:
    return 14 + 2 * anc_threshold + 2


def thin_wedge(h: Direction, inside: Sequence[Wedge], partner: Wedge) -> Wedge:
    """The narrowest-needed wedge spanned by ``N h -+ h_perp`` that lies strictly
    inside every wedge of ``inside`` and forms a Contain pair with ``partner``."""
    px, py = -h.dy, h.dx
    for n in range(1, 1 << 16):
        u = Wedge.from_vectors((n * h.dx - px, n * h.dy - py), (n * h.dx + px, n * h.dy + py))
        if all(x.contains_offset(d, closed=False) for x in inside for d in u.sides) \
                and classify_pair(u, partner) is PairType.CONTAIN:
            return u
    raise WrongType("no thin wedge fits")  # pragma: no cover


def _split_by_boundary(points, idx, v: Wedge, w: Wedge, colors):
    """Color the ``v``-boundary of ``idx`` and sort the rest by the colors they see.

    Returns (s_blue, s_red, s_mixed): points whose ``v`` translate meets only
    blue, only red, or both colors of the boundary.
    """
    h = common_direction([v, w]) or common_direction([v, w.reflected()])
    if h is None:
        raise WrongType("no direction lies strictly inside v and +-w")
    sub = _sub(points, idx)
    frame = Frame(sub, v)
    bd = boundary_indices(frame)
    u = thin_wedge(h, [v], w)
    bd_colors = color_contain_pair(_sub(sub, bd), u, w).colors if bd else []
    for i, c in zip(bd, bd_colors):
        colors[idx[i]] = c
    bset = set(bd)
    out = ([], [], [])
    for i in range(len(sub)):
        if i in bset:
            continue
        seen = {colors[idx[b]] for b in bd if frame.in_translate(i, b)}
        slot = 2 if len(seen) > 1 else (0 if seen == {BLUE} else 1)
        out[slot].append(idx[i])
    return out


def anc_to_nc(points: Sequence, v: Wedge, w: Wedge, anc: AncColoring | None = None) -> ColoringResult:
    """Coloring in which large translates of both ``v`` and ``w`` are bichromatic.

    Built from the asymmetric colorings of ``(v, w)`` on two leftover subsets.
    The returned threshold is the one certified by the oracle; it never
    exceeds :func:`nc_bound` of the asymmetric threshold.
    """
    points = list(points)
    kind = classify_pair(v, w)
    if kind in (PairType.SPECIAL, PairType.BIG):
        raise WrongType(f"pairs of type {kind} are not handled")
    n = len(points)
    colors = [RED] * n
    s_b, s_r, s_0 = _split_by_boundary(points, list(range(n)), v, w, colors)
    if s_0:
        _scatter(n, s_0, single_wedge_colors(_sub(points, s_0), w), colors)
    anc_t = 0
    for part, own in ((s_b, BLUE), (s_r, RED)):
        if not part:
            continue
        same, other, mixed = _split_by_boundary(points, part, w, v, colors)
        if own == RED:
            same, other = other, same
        # same: both wedges already see ``own``; mixed: w sees both colors
        for q in same + mixed:
            colors[q] = 1 - own
        if other:
            a = anc_coloring(_sub(points, other), v, w)
            anc_t = max(anc_t, a.threshold)
            sub_colors = a.colors if own == BLUE else flip(a.colors)
            _scatter(n, other, sub_colors, colors)
    if anc is not None:
        anc_t = max(anc_t, anc.threshold)
    elif not anc_t:
        anc_t = anc_coloring([], v, w).threshold
    bound = nc_bound(anc_t)
    t = max(verified_threshold(points, colors, v), verified_threshold(points, colors, w))
    if t > bound:
        raise VerificationFailed(verify_coloring(points, colors, [Requirement(v, bound), Requirement(w, bound)]))
    reqs = [Requirement(v, t, "both"), Requirement(w, t, "both")]
    return ColoringResult(colors, reqs, "anc-to-nc",
                          {"nc_bound": bound, "anc_threshold": anc_t,
                           "parts": {"blue": len(s_b), "red": len(s_r), "mixed": len(s_0)}})


# ---------------------------------------------------------------------------
# Several wedges

F12 = 8  # every non-Special pair has an asymmetric coloring with thresholds <= 8


def f_bound(s: int, t: int) -> int:
    """Closed-form upper bound ``(8 s) ** (2 ** (t - 1))``."""
    if s < 1 or t < 1:
        raise ValueError("s and t must be positive")
    return (8 * s) ** (2 ** (t - 1))


def f_internal(s: int, t: int) -> int:
    """The threshold actually guaranteed by :func:`partition_multi`."""
    if s < 1 or t < 1:
        raise ValueError("s and t must be positive")
    if t == 1:
        return s
    if t == 2:
        return s * s * F12
    return f_internal(f_internal(s, 2), t - 1)


def _blocks(paths, size, rest):
    """Consecutive groups of ``size`` paths; leftover points join the first group."""
    out = []
    for b in range(0, len(paths), size):
        out.append([q for p in paths[b:b + size] for q in p])
    out[0] = out[0] + list(rest)
    return out


def _partition_pair(points, idx, v: Wedge, w: Wedge, s: int) -> tuple[list[int], list[int]]:
    """Split ``idx`` so that ``v`` translates with >= f(s,2) points keep s in the
    first part and ``w`` translates keep s in the second."""
    if not idx:
        return [], []
    sub = _sub(points, idx)
    if s == 1:
        groups = [list(range(len(sub)))]
    else:
        if v.is_big or w.is_big:
            raise WrongType("strength above 1 needs wedges with angle below pi")
        ip = integer_coords(sub)
        fv, fw = Frame(sub, v, scaled=ip), Frame(sub, w, scaled=ip)
        pv = path_decomposition_indices(fv, s * s * F12, pad=True)
        groups = []
        for h in _blocks(pv.paths, s * F12, pv.rest):
            if not h:
                continue
            pw = path_decomposition_indices(fw, s * F12, idx=h, pad=True)
            groups += [g for g in _blocks(pw.paths, F12, pw.rest) if g]
    first, second = [], []
    for g in groups:
        a = anc_coloring(_sub(sub, g), v, w)
        if a.threshold > F12:
            raise VerificationFailed(f"asymmetric threshold {a.threshold} exceeds {F12}")
        for q, c in zip(g, a.colors):
            (first if c == RED else second).append(idx[q])
    return sorted(first), sorted(second)


@dataclass
class Partition:
    parts: list[list[int]]
    wedges: list[Wedge]
    strength: int
    threshold: int

    def labels(self, n: int) -> list[int]:
        out = [0] * n
        for i, part in enumerate(self.parts):
            for q in part:
                out[q] = i
        return out


def _check_pairs(ws: Sequence[Wedge]) -> None:
    for i, j in combinations(range(len(ws)), 2):
        if classify_pair(ws[i], ws[j]) is PairType.SPECIAL:
            raise SpecialPairPresent(i, j)


def _partition(points, idx, ws, s) -> list[list[int]]:
    t = len(ws)
    if t == 1:
        return [list(idx)]
    if t == 2:
        return list(_partition_pair(points, idx, ws[0], ws[1], s))
    s2 = f_internal(s, 2)
    coarse = _partition(points, idx, ws[:-1], s2)
    parts, last = [], []
    for wi, part in zip(ws, coarse):
        keep, give = _partition_pair(points, part, wi, ws[-1], s)
        parts.append(keep)
        last += give
    return parts + [sorted(last)]


def partition_multi(points: Sequence, ws: Sequence[Wedge], strength: int) -> Partition:
    """Split the points into one part per wedge: any translate of ``ws[i]``
    with at least ``f_internal(strength, len(ws))`` points keeps ``strength``
    of them in part ``i``."""
    if not ws:
        raise ValueError("need at least one wedge")
    if strength < 1:
        raise ValueError("strength must be positive")
    ws = list(ws)
    _check_pairs(ws)
    parts = _partition(list(points), list(range(len(points))), ws, strength)
    return Partition(parts, ws, strength, f_internal(strength, len(ws)))


def color_wedge_system(points: Sequence, ws: Sequence[Wedge], verify: bool = False) -> ColoringResult:
    """Coloring in which every translate of every wedge with at least
    ``f_internal(3, len(ws))`` points is bichromatic.

    With ``verify`` the oracle also measures the threshold actually achieved
    for each wedge (stored under ``info["verified"]``).
    """
    points = list(points)
    ws = list(ws)
    if len(ws) == 1:
        res = color_single_wedge(points, ws[0])
        res.info["verified"] = [verified_threshold(points, res.colors, ws[0])] if verify else None
        return res
    part = partition_multi(points, ws, 3)
    colors = [RED] * len(points)
    for w, idx in zip(ws, part.parts):
        _scatter(len(points), idx, single_wedge_colors(_sub(points, idx), w), colors)
    reqs = [Requirement(w, part.threshold, "both") for w in ws]
    info = {"parts": part.parts}
    if verify:
        info["verified"] = [verified_threshold(points, colors, w) for w in ws]
    return ColoringResult(colors, reqs, "wedge-system", info)
