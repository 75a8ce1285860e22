"""Acceptance criteria 1-8, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are repeated in the
terminal summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import rconvex, rpair, rpoints, rwedge  # noqa: E402

from coverdecomp.classify import PairType  # noqa: E402
from coverdecomp.coloring import (anc_coloring, color_big_pair, color_contain_pair, color_halfplane_pair,  # noqa: E402
                                  color_hard_pair, color_single_wedge, color_wedge_system, anc_to_nc,
                                  f_internal, partition_multi)
from coverdecomp.cover import grid_params  # noqa: E402
from coverdecomp.errors import WrongType  # noqa: E402
from coverdecomp.geometry import Polygon, Wedge, polygon_wedges  # noqa: E402
from coverdecomp.oracle import (Requirement, min_nc_constant, partition_threshold, verified_threshold,  # noqa: E402
                                verify_coloring, verify_partition)
from coverdecomp.witness import certify_indecomposable, construct_witness, good_coloring_exists  # noqa: E402

RESULTS: dict[int, str] = {}

V = Wedge.from_vectors((4, 1), (3, 2))
W = Wedge.from_vectors((2, 3), (1, 4))
SQUARE = Polygon.of([(0, 0), (1, 0), (1, 1), (0, 1)])
NON_SPECIAL = [PairType.BIG, PairType.HALFPLANE, PairType.CONTAIN, PairType.HARD]


def _record(num: int, ok: bool, detail: str) -> None:
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[num] = line
    print(line)


# 1 ---------------------------------------------------------------------------

def test_criterion_1_witness_certification():
    t = time.perf_counter()
    notes, ok = [], True
    for k, size in ((2, 5), (3, 19)):
        wi = construct_witness(V, W, k, k)
        cert = certify_indecomposable(wi)
        good = len(wi) == size and cert.defeated == cert.total == 2 ** size
        ok &= good
        notes.append(f"S({k},{k}) {len(wi)} points {cert.defeated}/{cert.total}")
    dt = time.perf_counter() - t
    ok &= dt < 10
    _record(1, ok, f"{'; '.join(notes)}; {dt:.1f}s")
    assert ok


# 2 ---------------------------------------------------------------------------

COLORER_CASES = [
    ("single convex wedge", lambda rng: (rwedge(rng, big=False),), color_single_wedge, (2,)),
    ("single big wedge", lambda rng: (rwedge(rng, big=True),), color_single_wedge, (3,)),
    ("contain pair", lambda rng: rpair(rng, PairType.CONTAIN), color_contain_pair, (4, 14)),
    ("big pair", lambda rng: rpair(rng, PairType.BIG), color_big_pair, (1, 3)),
    ("halfplane pair", lambda rng: rpair(rng, PairType.HALFPLANE), color_halfplane_pair, (1, 2)),
    ("hard pair", lambda rng: rpair(rng, PairType.HARD), color_hard_pair, (2, 2)),
]


def test_criterion_2_colorer_thresholds():
    t = time.perf_counter()
    rng = random.Random(2)
    bad, notes = 0, []
    for name, draw, fn, target in COLORER_CASES:
        fails = 0
        for _ in range(1000):
            ws = draw(rng)
            pts = rpoints(rng, rng.randint(1, 100), ws)
            res = fn(pts, *ws)
            # check at the stated thresholds, keeping each requirement's wedge and color demand
            reqs = [Requirement(r.wedge, tgt, r.need) for r, tgt in zip(res.requirements, target)]
            if len(reqs) != len(target) or verify_coloring(pts, res.colors, reqs) is not None:
                fails += 1
        bad += fails
        notes.append(f"{name} {1000 - fails}/1000")
    dt = time.perf_counter() - t
    ok = bad == 0 and dt < 120
    _record(2, ok, f"{', '.join(notes)}; {dt:.0f}s")
    assert ok


# 3 ---------------------------------------------------------------------------

def test_criterion_3_anc_at_most_eight():
    rng = random.Random(3)
    worst = {}
    for typ in NON_SPECIAL:
        top = 0
        for _ in range(250):
            v, w = rpair(rng, typ)
            pts = rpoints(rng, rng.randint(1, 100), [v, w])
            a = anc_coloring(pts, v, w)
            for r in a.requirements():
                top = max(top, verified_threshold(pts, a.colors, r.wedge, r.need))
        worst[typ.value] = top
    ok = max(worst.values()) <= 8
    _record(3, ok, "largest verified ANC threshold per type " + ", ".join(f"{k}={v}" for k, v in worst.items()))
    assert ok


# 4 ---------------------------------------------------------------------------

def test_criterion_4_partition_guarantee():
    rng = random.Random(4)
    f33 = f_internal(3, 3)
    observed, bad = 0, 0
    for _ in range(5):
        ws = polygon_wedges(rconvex(rng, 3, r=20))
        pts = rpoints(rng, 500, ws)
        part = partition_multi(pts, ws, 3)
        if verify_partition(pts, part.parts, ws, f33, 3) is not None:
            bad += 1
        observed = max(observed, max(partition_threshold(pts, p, w, 3) for p, w in zip(part.parts, ws)))
    ok = bad == 0
    # f(3,3) exceeds n, so the guarantee holds vacuously; the observed value is the informative number
    _record(4, ok, f"5 triangles, n=500, violations at f(3,3)={f33}: {bad}; "
                   f"smallest threshold that actually held: {observed}")
    assert ok


# 5 ---------------------------------------------------------------------------

# Largest cover the exact pipeline can build and verify within the time budget.
TRANSLATE_BUDGET = 200_000


def _area(poly: Polygon) -> Fraction:
    vs = poly.vertices
    return abs(sum(a.x * b.y - a.y * b.x for a, b in zip(vs, vs[1:] + vs[:1]))) / 2


def _required_fold(poly: Polygon) -> tuple[int, int, int]:
    ws = polygon_wedges(poly)
    k = max(color_wedge_system(rpoints(random.Random(0), 8, ws), ws).thresholds())
    K = grid_params(poly).K
    return k, K, k * K


def test_criterion_5_desk_scale_reproduction():
    tri = rconvex(random.Random(5), 3, r=6)
    notes, ok = [], True
    for name, poly in (("square", SQUARE), ("triangle", tri)):
        k, K, M = _required_fold(poly)
        translates = M * 100 / float(_area(poly))
        feasible = translates <= TRANSLATE_BUDGET
        ok &= feasible
        notes.append(f"{name} k={k} K={K} M={M} needs about {translates:.2e} translates")
    if not ok:
        notes.append(f"over the budget of {TRANSLATE_BUDGET}, not attempted")
    _record(5, ok, "; ".join(notes))
    assert ok, RESULTS[5]


# 6 ---------------------------------------------------------------------------

def _nc_instances(rng):
    """Small instances with NC colorings whose thresholds are claimed per wedge."""
    while True:
        pick = rng.randrange(4)
        if pick == 0:
            ws = (rwedge(rng),)
            pts = rpoints(rng, rng.randint(2, 10), ws)
            yield pts, ws, color_single_wedge(pts, *ws)
        elif pick == 1:
            ws = rpair(rng, PairType.CONTAIN)
            pts = rpoints(rng, rng.randint(2, 10), ws)
            yield pts, ws, color_contain_pair(pts, *ws)
        elif pick == 2:
            ws = rpair(rng, rng.choice([PairType.HALFPLANE, PairType.HARD, PairType.CONTAIN]))
            pts = rpoints(rng, rng.randint(2, 10), ws)
            try:
                yield pts, ws, anc_to_nc(pts, *ws)
            except WrongType:
                continue
        else:
            ws = polygon_wedges(rconvex(rng, rng.randint(3, 5), r=8))
            pts = rpoints(rng, rng.randint(2, 10), ws)
            yield pts, ws, color_wedge_system(pts, ws)


def test_criterion_6_oracle_consistency():
    rng = random.Random(6)
    bad, count = 0, 0
    gen = _nc_instances(rng)
    for _ in range(300):
        pts, ws, res = next(gen)
        n = len(pts)
        count += 1
        claims = [r.threshold for r in res.requirements]
        for r in res.requirements:
            m = min_nc_constant(pts, [r.wedge])
            if (n + 1 if m is None else m) > r.threshold:
                bad += 1
        joint = min_nc_constant(pts, list(ws))
        if (n + 1 if joint is None else joint) > max(claims):
            bad += 1
    wi = construct_witness(V, W, 2, 2)
    m22 = min_nc_constant(wi.points, [V, W])
    exceeds = m22 is None or m22 > 2
    ok = bad == 0 and exceeds
    shown = "none up to n" if m22 is None else m22
    _record(6, ok, f"{count} instances with n<=10, {bad} claims below the exact minimum; "
                   f"min_nc(S(2,2))={shown}")
    assert ok


# 7 ---------------------------------------------------------------------------

PROPERTY_TESTS = [
    "test_sweep.py::test_boundary_interval_property",
    "test_sweep.py::test_path_coverage_and_exactness",
    "test_sweep.py::test_shadows_match_definition_and_are_disjoint",
    "test_geometry.py::test_reflect_involution",
    "test_classify.py::test_classification_symmetric",
    "test_classify.py::test_classification_rotation_invariant",
    "test_cover.py::test_dualization_equivalence",
]


def test_criterion_7_property_suites():
    here = Path(__file__).parent
    cmd = [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", "--hypothesis-seed=0",
           *[str(here / t) for t in PROPERTY_TESTS]]
    proc = subprocess.run(cmd, capture_output=True, text=True, cwd=here.parent)
    tail = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr.strip()
    ok = proc.returncode == 0
    _record(7, ok, f"{len(PROPERTY_TESTS)} property suites, seed 0: {tail}")
    assert ok, proc.stdout[-2000:]


# 8 ---------------------------------------------------------------------------

def test_criterion_8_small_sets_are_colorable():
    rng = random.Random(8)
    fails, total = 0, 0
    for k in (5, 6, 7):
        for _ in range(100):
            v, w = rpair(rng, PairType.SPECIAL)
            n = rng.randint(1, 2 ** (k - 2) - 1)
            pts = rpoints(rng, n, [v, w])
            c = good_coloring_exists(n, k, pts, v, w, seed=rng.randrange(10 ** 6))
            total += 1
            if c is None or verify_coloring(pts, c, [Requirement(v, k), Requirement(w, k)]) is not None:
                fails += 1
    ok = fails == 0
    _record(8, ok, f"{total - fails}/{total} Special-pair instances with n < 2^(k-2), k in 5..7")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
