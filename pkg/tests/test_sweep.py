import random

import pytest
from hypothesis import given, settings, strategies as st

from coverdecomp.classify import cone_within
from coverdecomp.errors import AngleTooLarge, NotBoundaryPoint, TooFewPoints
from coverdecomp.geometry import PlacedWedge, Point, Wedge
from coverdecomp.oracle import WedgeRanges
from coverdecomp.sweep import (Frame, boundary, boundary_indices, path_decomposition, shadow, shadow_indices,
                               shadows)

from conftest import rpoints, rwedge

QUAD = Wedge.from_vectors((1, 0), (0, 1))


def _brute_boundary(pts, w):
    return {i for i, p in enumerate(pts)
            if not any(PlacedWedge(w, p).contains(q) for j, q in enumerate(pts) if j != i)}


def _brute_shadow(pts, w, x):
    bd = _brute_boundary(pts, w)
    return {i for i, p in enumerate(pts)
            if {j for j in bd if PlacedWedge(w, p).contains(pts[j])} == {x}}


def _instances(seed, count, n_max=14, R=40):
    rng = random.Random(seed)
    for _ in range(count):
        w = rwedge(rng, big=False)
        yield w, rpoints(rng, rng.randint(1, n_max), [w], R=R)


def test_staircase_examples():
    stair = [Point.of(1, 3), Point.of(2, 2), Point.of(3, 1)]
    assert set(boundary(stair, QUAD)) == set(stair)
    pair = [Point.of(1, 1), Point.of(2, 2)]
    expect = {pair[i] for i in _brute_boundary(pair, QUAD)}
    assert set(boundary(pair, QUAD)) == expect == {Point.of(2, 2)}
    assert boundary([Point.of(5, 5)], QUAD) == [Point.of(5, 5)]


def test_big_wedge_refused():
    with pytest.raises(AngleTooLarge):
        boundary([Point.of(0, 0)], Wedge.from_vectors((1, 0), (0, -1)))


def test_frame_membership_matches_geometry():
    for w, pts in _instances(1, 100):
        f = Frame(pts, w)
        for i, p in enumerate(pts):
            for j, q in enumerate(pts):
                assert f.in_translate(i, j) == PlacedWedge(w, p).contains(q)


def test_boundary_matches_definition_in_y_order():
    for w, pts in _instances(2, 300):
        f = Frame(pts, w)
        got = boundary_indices(f)
        assert set(got) == _brute_boundary(pts, w)
        assert got == f.y_sorted(got)


def test_boundary_interval_property():
    """Every translate meets the boundary in a contiguous run of its y-order."""
    for w, pts in _instances(3, 200):
        f = Frame(pts, w)
        bd = boundary_indices(f)
        wr = WedgeRanges(pts, w)
        for i, j in wr.cells():
            inside = [k for k, q in enumerate(bd) if q in set(wr.members(i, j))]
            if inside:
                assert inside == list(range(inside[0], inside[-1] + 1))


def test_shadows_match_definition_and_are_disjoint():
    for w, pts in _instances(4, 200):
        f = Frame(pts, w)
        sh = shadows(f)
        seen = set()
        for x, members in sh.items():
            assert set(members) == _brute_shadow(pts, w, x)
            assert set(shadow_indices(f, x)) == set(members)
            assert not seen & set(members)
            seen |= set(members)


def test_shadow_of_non_boundary_point_refused():
    pts = [Point.of(1, 1), Point.of(2, 2)]
    with pytest.raises(NotBoundaryPoint):
        shadow(pts, QUAD, Point.of(1, 1))


# ---------------------------------------------------------------------------
# Path decompositions


def _sweep_oracle(f, k):
    """Paths from evaluating W(k; y) between every pair of consecutive candidate events."""
    n = len(f)
    ys = sorted({f.B[q] - f.A[p] for p in range(n) for q in range(n)})
    probes = [ys[0] - 1] + [(a + b) / 2 for a, b in zip(ys, ys[1:])] + [ys[-1] + 1]

    def top(y):
        return set(sorted(range(n), key=lambda i: -min(f.A[i], f.B[i] - y))[:k])

    cur = top(probes[0])
    paths = [[i] for i in sorted(cur, key=lambda i: -f.A[i])]
    for y in probes[1:]:
        nxt = top(y)
        out, inn = cur - nxt, nxt - cur
        assert len(out) == len(inn) <= 1
        if out:
            (q,), (p,) = out, inn
            next(path for path in paths if path[-1] == q).append(p)
        cur = nxt
    return paths


def test_paths_match_brute_force_sweep():
    rng = random.Random(5)
    for _ in range(200):
        w = rwedge(rng, big=False)
        pts = rpoints(rng, rng.randint(1, 12), [w], R=30)
        f = Frame(pts, w)
        for k in range(1, len(pts) + 1):
            assert path_decomposition(pts, w, k).paths == _sweep_oracle(f, k)


def test_order_one_is_the_boundary():
    for w, pts in _instances(6, 100):
        pd = path_decomposition(pts, w, 1)
        assert set(pd.paths[0]) == set(boundary_indices(Frame(pts, w)))


def test_too_few_points():
    with pytest.raises(TooFewPoints):
        path_decomposition([Point.of(0, 0)], QUAD, 2)
    pd = path_decomposition([Point.of(0, 0)], QUAD, 2, pad=True)
    assert pd.paths == [[0]]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 4))
def test_path_coverage_and_exactness(seed, k):
    rng = random.Random(seed)
    w = rwedge(rng, big=False)
    pts = rpoints(rng, rng.randint(k, 25), [w], R=60)
    pd = path_decomposition(pts, w, k)
    assert len(pd.paths) == k
    flat = [q for p in pd.paths for q in p]
    assert len(flat) == len(set(flat))
    assert set(flat) | set(pd.rest) == set(range(len(pts)))
    wr = WedgeRanges(pts, w)
    for i, j in wr.cells():
        members = set(wr.members(i, j))
        hits = [len(members & set(p)) for p in pd.paths]
        if len(members) >= k:
            assert min(hits) >= 1
        if len(members) == k:
            assert hits == [1] * k


def test_contain_pair_meets_paths_in_intervals():
    """A translate of a wedge inside W (or inside its reflection) meets each path in a contiguous run."""
    rng = random.Random(8)
    checked = 0
    while checked < 80:
        w = rwedge(rng, big=False)
        inner = rwedge(rng, big=False)
        if rng.random() < 0.5:
            inner = inner.reflected()
        if not (cone_within(inner, w) or cone_within(inner.reflected(), w)):
            continue
        checked += 1
        pts = rpoints(rng, rng.randint(4, 20), [w, inner], R=60)
        k = rng.randint(1, 3)
        pd = path_decomposition(pts, w, k)
        wr = WedgeRanges(pts, inner)
        for i, j in wr.cells():
            members = set(wr.members(i, j))
            for path in pd.paths:
                idx = [t for t, q in enumerate(path) if q in members]
                if idx:
                    assert idx == list(range(idx[0], idx[-1] + 1))
