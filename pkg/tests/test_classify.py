import random

import pytest
from hypothesis import given, settings, strategies as st

from coverdecomp.classify import PairType, classify_pair, cone_within, find_special_pair, is_convex
from coverdecomp.geometry import Polygon, Wedge, cross, polygon_wedges

from conftest import rconvex, rwedge, wedges

SQUARE = Polygon.of([(0, 0), (1, 0), (1, 1), (0, 1)])


def test_square_opposite_and_adjacent():
    ws = polygon_wedges(SQUARE)
    assert classify_pair(ws[0], ws[2]) is PairType.CONTAIN
    assert classify_pair(ws[0], ws[1]) is PairType.HALFPLANE


def test_disjoint_wedges_in_a_halfplane_are_special():
    v = Wedge.from_vectors((4, 1), (3, 2))
    w = Wedge.from_vectors((2, 3), (1, 4))
    assert classify_pair(v, w) is PairType.SPECIAL


def test_wedge_with_its_reflection_is_contain():
    rng = random.Random(3)
    for _ in range(200):
        w = rwedge(rng, big=False)
        assert classify_pair(w, w.reflected()) is PairType.CONTAIN


def test_any_big_wedge_gives_big():
    rng = random.Random(4)
    for _ in range(300):
        v, w = rwedge(rng, big=True), rwedge(rng)
        assert classify_pair(v, w) is PairType.BIG
        assert classify_pair(w, v) is PairType.BIG


def _generic(v, w):
    sides = list(v.sides) + list(w.sides)
    return all(cross(a, b) != 0 for i, a in enumerate(sides) for b in sides[i + 1:])


def _in_open_halfplane(sides):
    # with no two sides parallel: some side has all the others strictly counter-clockwise of it
    return any(all(cross(a, b) > 0 for b in sides if b is not a) for a in sides)


def test_special_matches_definition_on_generic_pairs():
    """Special iff both convex, jointly inside an open halfplane, and neither contains the other."""
    rng = random.Random(5)
    checked = 0
    while checked < 3000:
        v, w = rwedge(rng), rwedge(rng)
        if not _generic(v, w):
            continue
        checked += 1
        expect = (not v.is_big and not w.is_big and _in_open_halfplane(list(v.sides) + list(w.sides))
                  and not cone_within(v, w) and not cone_within(w, v))
        assert (classify_pair(v, w) is PairType.SPECIAL) == expect, (v, w)


@settings(max_examples=400, deadline=None)
@given(wedges(), wedges())
def test_classification_symmetric(v, w):
    assert classify_pair(v, w) is classify_pair(w, v)


ROTATIONS = [((0, -1), (1, 0)), ((-1, 0), (0, -1)), ((3, -4), (4, 3)), ((5, -12), (12, 5))]


def _rot(w, m):
    (a, b), (c, d) = m
    f = lambda p: (a * p[0] + b * p[1], c * p[0] + d * p[1])  # noqa: E731
    return Wedge.from_vectors(f(w.dir1), f(w.dir2), w.closed)


@settings(max_examples=300, deadline=None)
@given(wedges(), wedges(), st.sampled_from(ROTATIONS))
def test_classification_rotation_invariant(v, w, m):
    assert classify_pair(v, w) is classify_pair(_rot(v, m), _rot(w, m))


def test_convex_polygons_have_no_big_or_special_pairs():
    rng = random.Random(6)
    for _ in range(150):
        p = rconvex(rng, rng.randint(3, 8))
        assert is_convex(p)
        ws = polygon_wedges(p)
        for i in range(len(ws)):
            for j in range(i + 1, len(ws)):
                assert classify_pair(ws[i], ws[j]) not in (PairType.BIG, PairType.SPECIAL)
        assert find_special_pair(p) is None


def test_concave_quadrilateral_has_special_pair():
    p = Polygon.of([(0, 0), (4, 0), (4, 4), (3, 1)])
    assert not is_convex(p)
    i, j = find_special_pair(p)
    ws = polygon_wedges(p)
    assert classify_pair(ws[i], ws[j]) is PairType.SPECIAL


@pytest.mark.parametrize("typ", list(PairType))
def test_every_type_occurs(typ):
    rng = random.Random(7)
    seen = {classify_pair(rwedge(rng), rwedge(rng)) for _ in range(3000)}
    assert typ in seen
