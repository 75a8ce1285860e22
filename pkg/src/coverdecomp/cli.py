"""Command line interface.

Exit codes: 0 success, 2 unreadable or unsuitable input, 3 Special pair
present (or absent when a witness needs one), 4 verification failed,
5 fold too small for the guaranteed decomposition.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import io as jio
from .classify import classify_pair, is_convex
from .coloring import (anc_to_nc, color_big_pair, color_contain_pair, color_halfplane_pair, color_hard_pair,
                       color_single_wedge, color_wedge_system)
from .cover import decompose_cover, decompose_cover_s, lattice_cover
from .errors import (CounterexampleFound, CoverDecompError, DuplicatePoints, FoldTooSmall, InvalidPolygon,
                     NoSpecialPair, NotSpecialPair, SpecialPairPresent, TooFewPoints, TooLarge,
                     VerificationFailed, WrongType)
from .geometry import Polygon, polygon_wedges, rotate_to_general_position
from .oracle import min_coverage, verified_threshold, verify_covering, verify_coloring
from .render import coloring_svg, cover_svg, witness_svg
from .witness import MAX_CERTIFY, certify_indecomposable, construct_witness, polygon_witness

EXIT_OK, EXIT_PARSE, EXIT_SPECIAL, EXIT_VERIFY, EXIT_FOLD = 0, 2, 3, 4, 5


class _Exit(Exception):
    def __init__(self, code: int, message: str, payload: dict | None = None):
        super().__init__(message)
        self.code = code
        self.payload = payload


def _emit(args, payload: dict) -> None:
    text = jio.dumps(payload)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


# ---------------------------------------------------------------------------
# classify


def cmd_classify(args) -> int:
    obj = jio.read_instance(args.input)
    if obj["kind"] == "polygon" or ("polygon" in obj and "wedges" not in obj):
        poly = jio.polygon(obj.get("vertices", obj.get("polygon")))
        ws = polygon_wedges(poly)
        convex = is_convex(poly)
    else:
        _, ws, _ = jio.points_instance(obj)
        convex = None
    pairs = []
    special = None
    for i in range(len(ws)):
        for j in range(i + 1, len(ws)):
            t = classify_pair(ws[i], ws[j])
            pairs.append({"i": i, "j": j, "type": str(t)})
            if special is None and str(t) == "Special":
                special = [i, j]
    _emit(args, {"kind": "classification", "wedges": [jio.enc_wedge(w) for w in ws],
                 "convex": convex, "pairs": pairs, "special_pair": special})
    if special is not None:
        _note(f"special pair {special[0]} {special[1]}")
        return EXIT_SPECIAL
    _note("no special pair")
    return EXIT_OK


# ---------------------------------------------------------------------------
# color


_LEMMAS = {
    "1": (1, color_single_wedge),
    "2": (2, color_contain_pair),
    "3": (2, anc_to_nc),
    "4": (2, color_big_pair),
    "5": (2, color_halfplane_pair),
    "6": (2, color_hard_pair),
}


def cmd_color(args) -> int:
    obj = jio.read_instance(args.input)
    pts, ws, _ = jio.points_instance(obj)
    if args.lemma is not None:
        need, fn = _LEMMAS[args.lemma]
        if len(ws) != need:
            raise _Exit(EXIT_PARSE, f"--lemma {args.lemma} needs exactly {need} wedge(s), got {len(ws)}")
    _, local = rotate_to_general_position(pts, ws, seed=args.seed)
    if args.lemma is None:
        res = color_wedge_system(local, ws)
    else:
        res = fn(local, *ws)
    # the perturbation only refines the ranges, so checking the input points suffices
    violation = verify_coloring(pts, res.colors, res.requirements)
    verified = ([verified_threshold(pts, res.colors, r.wedge, r.need) for r in res.requirements]
                if len(pts) <= args.max_certify_points else None)
    payload = {
        "kind": "coloring", "method": res.method,
        "points": [jio.enc_point(p) for p in pts],
        "colors": ["red" if c == 0 else "blue" for c in res.colors],
        "requirements": [{"wedge": jio.enc_wedge(r.wedge), "threshold": r.threshold, "need": r.need}
                         for r in res.requirements],
        "thresholds": list(res.thresholds()),
        "verified_thresholds": verified,
        "verdict": "pass" if violation is None else "fail",
        "violation": None if violation is None else {
            "requirement": violation.requirement, "subset": list(violation.subset),
            "translate": jio.enc_placed(violation.translate)},
    }
    if args.svg:
        hl = [violation.translate] if violation else []
        _write(args.svg, coloring_svg(pts, res.colors, hl, title=f"coloring ({res.method})"))
    if violation is not None:
        raise _Exit(EXIT_VERIFY, f"verification failed: {violation}", payload)
    _emit(args, payload)
    _note(f"{res.method}: thresholds {list(res.thresholds())}, verdict pass")
    return EXIT_OK


# ---------------------------------------------------------------------------
# decompose


def cmd_decompose(args) -> int:
    obj = jio.read_instance(args.input)
    if obj["kind"] != "cover":
        raise _Exit(EXIT_PARSE, "decompose needs a cover instance")
    inst = jio.cover(obj)
    if inst.fold < 0:
        inst.fold = min_coverage(inst.polygon, inst.centers, inst.region)
    try:
        if args.s == 2:
            dec = decompose_cover(inst, policy=args.policy, seed=args.seed)
        else:
            dec = decompose_cover_s(inst, args.s, policy=args.policy, seed=args.seed)
    except FoldTooSmall as e:
        raise _Exit(EXIT_FOLD, f"fold {e.actual} is below the required fold {e.required}",
                    {"kind": "cover-decomposition", "error": "fold-too-small",
                     "required_fold": e.required, "fold": e.actual})
    coverage = []
    for label in range(1, dec.s + 1):
        members = dec.members(label)
        gap = verify_covering(inst.polygon, [inst.centers[i] for i in members], inst.region)
        coverage.append({"class": label, "size": len(members), "covers": gap is None,
                         "gap": None if gap is None else {"point": jio.enc_point(gap.point), "count": gap.count}})
    payload = {"kind": "cover-decomposition", "s": dec.s, "policy": args.policy, "fold": inst.fold,
               "k": dec.k, "K": dec.K, "required_fold": dec.required_fold,
               "classes": dec.classes, "coverage": coverage, "cells": len(dec.cells)}
    if args.svg:
        translates = [inst.translate(i) for i in range(len(inst.centers))]
        _write(args.svg, cover_svg(translates, dec.classes, inst.region, title=f"{dec.s} classes"))
    if not all(c["covers"] for c in coverage):
        raise _Exit(EXIT_VERIFY, "some class does not cover the region", payload)
    _emit(args, payload)
    _note(f"{dec.s} classes, all cover the region")
    return EXIT_OK


# ---------------------------------------------------------------------------
# witness


def cmd_witness(args) -> int:
    obj = jio.read_instance(args.input)
    k = args.k if args.k is not None else obj.get("k", 2)
    l = args.l if args.l is not None else (k if args.k is not None else obj.get("l", k))
    if not all(isinstance(x, int) and not isinstance(x, bool) and x >= 1 for x in (k, l)):
        raise _Exit(EXIT_PARSE, "k and l must be positive integers")
    try:
        if "wedges" in obj:
            ws = [jio.wedge(w) for w in obj["wedges"]]
            if len(ws) != 2:
                raise _Exit(EXIT_PARSE, "a witness request needs exactly two wedges")
            wi = construct_witness(ws[0], ws[1], k, l)
        else:
            poly = jio.polygon(obj.get("polygon", obj.get("vertices")))
            if k != l:
                raise _Exit(EXIT_PARSE, "polygon witnesses use k = l")
            wi = polygon_witness(poly, k)
    except (NotSpecialPair, NoSpecialPair) as e:
        raise _Exit(EXIT_SPECIAL, str(e))
    cert = None
    if len(wi) <= args.max_certify:
        c = certify_indecomposable(wi, max_points=max(args.max_certify, len(wi)))
        cert = {"defeated": c.defeated, "total": c.total, "summary": str(c)}
    payload = {
        "kind": "witness", "k": wi.k, "l": wi.l,
        "v": jio.enc_wedge(wi.v), "w": jio.enc_wedge(wi.w),
        "points": [jio.enc_point(p) for p in wi.points],
        "v_translates": [{"apex": jio.enc_point(t.apex), "points": sorted(s)}
                         for t, s in zip(wi.v_translates, wi.v_sets)],
        "w_translates": [{"apex": jio.enc_point(t.apex), "points": sorted(s)}
                         for t, s in zip(wi.w_translates, wi.w_sets)],
        "polygon": jio.enc_polygon(wi.polygon) if wi.polygon is not None else None,
        "certificate": cert,
    }
    if args.svg:
        _write(args.svg, witness_svg(wi.points, wi.v_translates, wi.w_translates,
                                     wi.v_polygons + wi.w_polygons, title=f"S({wi.k},{wi.l})"))
    _emit(args, payload)
    _note(f"{len(wi)} points" + (f", {cert['summary']}" if cert else ", not certified"))
    return EXIT_OK


# ---------------------------------------------------------------------------
# generate


SHAPES = {
    "square": [(0, 0), (1, 0), (1, 1), (0, 1)],
    "triangle": [(0, 0), (3, 1), (1, 2)],
    "pentagon": [(0, 0), (5, 1), (6, 4), (2, 6), (-1, 3)],
    "concave": [(0, 0), (4, 0), (4, 4), (3, 1)],
}


def cmd_generate(args) -> int:
    import random
    from fractions import Fraction
    rng = random.Random(args.seed)
    poly = Polygon.of(SHAPES[args.shape])
    if args.what == "points":
        pts = sorted({(rng.randint(0, args.scale), rng.randint(0, args.scale)) for _ in range(args.n)})
        payload = {"kind": "points", "polygon": jio.enc_polygon(poly), "points": [list(p) for p in pts]}
    elif args.what == "cover":
        from .oracle import Region
        side = args.region
        inst = lattice_cover(poly, Region.of(0, 0, side, side), Fraction(1, args.density),
                             jitter=args.jitter, seed=args.seed)
        payload = jio.enc_cover(inst)
    else:
        payload = {"kind": "witness-request", "polygon": jio.enc_polygon(poly), "k": 2, "l": 2}
    _emit(args, payload)
    return EXIT_OK


# ---------------------------------------------------------------------------
# report


def cmd_report(args) -> int:
    from .report import write_report
    obj = jio.read_instance(args.input)
    files = write_report(obj, args.dir, seed=args.seed)
    for f in files:
        _note(f)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coverdecomp", description="Two-colorings of wedge ranges and "
                                "decompositions of multiple coverings by polygon translates.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify wedge pairs and look for a Special pair")
    c.add_argument("input")
    c.add_argument("--out", "-o")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("color", help="two-color a point set for a wedge system")
    c.add_argument("input")
    c.add_argument("--lemma", choices=sorted(_LEMMAS), help="run one pair or single-wedge coloring")
    c.add_argument("--svg")
    c.add_argument("--seed", type=int, default=0, help="seed of the general-position perturbation")
    c.add_argument("--max-certify-points", type=int, default=2000,
                   help="measure the achieved thresholds up to this many points")
    c.add_argument("--out", "-o")
    c.set_defaults(func=cmd_color)

    c = sub.add_parser("decompose", help="split a multiple covering into coverings")
    c.add_argument("input")
    c.add_argument("--s", type=int, default=2, help="number of coverings")
    c.add_argument("--policy", choices=["guaranteed", "unchecked"], default="guaranteed",
                   help="refuse folds below the proven bound, or run and verify anyway")
    c.add_argument("--svg")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out", "-o")
    c.set_defaults(func=cmd_decompose)

    c = sub.add_parser("witness", help="build and certify an indecomposable point set")
    c.add_argument("input")
    c.add_argument("--k", type=int)
    c.add_argument("--l", type=int)
    c.add_argument("--max-certify", type=int, default=MAX_CERTIFY,
                   help="certify exhaustively up to this many points")
    c.add_argument("--svg")
    c.add_argument("--out", "-o")
    c.set_defaults(func=cmd_witness)

    c = sub.add_parser("generate", help="write a random instance")
    c.add_argument("what", choices=["points", "cover", "witness-request"])
    c.add_argument("--shape", choices=sorted(SHAPES), default="square")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--n", type=int, default=100)
    c.add_argument("--scale", type=int, default=10 ** 6)
    c.add_argument("--region", type=int, default=4, help="side of the square region to cover")
    c.add_argument("--density", type=int, default=4, help="lattice points per unit length")
    c.add_argument("--jitter", type=int, default=2)
    c.add_argument("--out", "-o")
    c.set_defaults(func=cmd_generate)

    c = sub.add_parser("report", help="figures and CSV tables for an instance")
    c.add_argument("input")
    c.add_argument("--dir", default="report")
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_report)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Exit as e:
        if e.payload is not None:
            _emit(args, e.payload)
        _note(str(e))
        return e.code
    except (jio.FormatError, InvalidPolygon, DuplicatePoints, TooFewPoints, TooLarge, WrongType,
            ValueError, KeyError, OSError) as e:
        _note(f"error: {e}")
        return EXIT_PARSE
    except SpecialPairPresent as e:
        _note(f"special pair {e.indices[0]} {e.indices[1]}")
        return EXIT_SPECIAL
    except (VerificationFailed, CounterexampleFound) as e:
        _note(f"verification failed: {e}")
        return EXIT_VERIFY
    except CoverDecompError as e:  # pragma: no cover - any other library refusal
        _note(f"error: {e}")
        return EXIT_PARSE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
