import random
from math import comb

import pytest

from coverdecomp.classify import PairType
from coverdecomp.errors import CounterexampleFound, NoSpecialPair, NotSpecialPair, TooLarge
from coverdecomp.geometry import Point, Polygon, Wedge
from coverdecomp.oracle import RED, Requirement, verify_coloring
from coverdecomp.witness import (binomial_size, certify_indecomposable, construct_witness, good_coloring_exists,
                                 polygon_witness)

from conftest import rpair, rpoints

V = Wedge.from_vectors((4, 1), (3, 2))
W = Wedge.from_vectors((2, 3), (1, 4))
CONCAVE = Polygon.of([(0, 0), (4, 0), (4, 4), (3, 1)])


def _exact_counts(wi):
    for fam, sets, k in ((wi.v_translates, wi.v_sets, wi.k), (wi.w_translates, wi.w_sets, wi.l)):
        for t, s in zip(fam, sets):
            inside = {i for i, p in enumerate(wi.points) if t.contains(p)}
            assert inside == set(s) and len(inside) == k


@pytest.mark.parametrize("k,l", [(1, 1), (1, 4), (4, 1), (2, 2), (2, 3), (3, 2), (3, 3), (2, 5)])
def test_cardinality_and_exact_counts(k, l):
    wi = construct_witness(V, W, k, l)
    assert len(wi) == comb(k + l, k) - 1 == binomial_size(k, l)
    assert len(set(wi.points)) == len(wi)
    _exact_counts(wi)


def test_random_special_pairs():
    rng = random.Random(1)
    for _ in range(30):
        v, w = rpair(rng, PairType.SPECIAL)
        k, l = rng.randint(1, 3), rng.randint(1, 3)
        wi = construct_witness(v, w, k, l)
        assert len(wi) == binomial_size(k, l)
        _exact_counts(wi)
        if len(wi) <= 12:
            assert certify_indecomposable(wi).defeated == 2 ** len(wi)


@pytest.mark.parametrize("k,l", [(1, 1), (2, 2), (2, 3), (3, 3)])
def test_certificate_defeats_every_coloring(k, l):
    wi = construct_witness(V, W, k, l)
    cert = certify_indecomposable(wi)
    n = len(wi)
    assert cert.total == cert.defeated == 2 ** n
    for mask in random.Random(2).sample(range(2 ** n), min(50, 2 ** n)):
        i = int(cert.witness[mask])
        red = {q for q in range(n) if mask >> q & 1}
        if i >= 0:
            assert set(wi.v_sets[i]) <= red
        else:
            assert not set(wi.w_sets[-1 - i]) & red
    assert "colorings defeated" in str(cert)


def test_tampered_witness_is_caught():
    wi = construct_witness(V, W, 2, 2)
    wi.w_translates = wi.w_translates[:-1]
    wi.w_sets = wi.w_sets[:-1]
    with pytest.raises(CounterexampleFound):
        certify_indecomposable(wi)


def test_size_limit():
    wi = construct_witness(V, W, 4, 4)
    assert len(wi) == 69
    with pytest.raises(TooLarge):
        certify_indecomposable(wi)


def test_non_special_pairs_refused():
    rng = random.Random(3)
    for typ in (PairType.BIG, PairType.HALFPLANE, PairType.CONTAIN, PairType.HARD):
        v, w = rpair(rng, typ)
        with pytest.raises(NotSpecialPair):
            construct_witness(v, w, 2, 2)
    with pytest.raises(ValueError):
        construct_witness(V, W, 0, 2)


def test_good_coloring_small_cases():
    assert good_coloring_exists(0, 3, [], V, W) == []
    rng = random.Random(4)
    pts = rpoints(rng, 3, [V, W])
    c = good_coloring_exists(3, 5, pts, V, W)
    assert c is not None and len(c) == 3
    wi = construct_witness(V, W, 2, 2)
    assert good_coloring_exists(len(wi), 2, wi.points, V, W) is None


def test_good_coloring_is_valid():
    rng = random.Random(5)
    for _ in range(20):
        v, w = rpair(rng, PairType.SPECIAL)
        k = rng.randint(4, 6)
        n = rng.randint(1, 2 ** (k - 2) - 1)
        pts = rpoints(rng, n, [v, w])
        c = good_coloring_exists(len(pts), k, pts, v, w, seed=rng.randint(0, 99))
        assert c is not None
        assert verify_coloring(pts, c, [Requirement(v, k), Requirement(w, k)]) is None


@pytest.mark.parametrize("k", [1, 2, 3])
def test_polygon_witness(k):
    wi = polygon_witness(CONCAVE, k)
    assert len(wi) == binomial_size(k, k)
    for poly, s in zip(wi.v_polygons + wi.w_polygons, wi.v_sets + wi.w_sets):
        assert {i for i, p in enumerate(wi.points) if poly.contains(p)} == set(s)
        assert len(s) == k
        # translates of the reflected polygon
        d = poly.vertices[0] - wi.polygon.vertices[0]
        assert poly == wi.polygon.translated(d)
    assert certify_indecomposable(wi).defeated == 2 ** len(wi)


def test_convex_polygon_has_no_witness():
    with pytest.raises(NoSpecialPair):
        polygon_witness(Polygon.of([(0, 0), (1, 0), (1, 1), (0, 1)]), 2)


def test_single_point_witness():
    wi = construct_witness(V, W, 1, 1)
    assert wi.points == [Point.of(0, 0)]
    cert = certify_indecomposable(wi)
    assert cert.explain(1).startswith("V") and cert.explain(0).startswith("W")
    assert RED == 0
