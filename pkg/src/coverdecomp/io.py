"""JSON encoding of instances and results with exact rationals.

Numbers are integers or strings ``"num/den"`` (decimal strings such as
``"0.25"`` are read too).  JSON floats are refused because they are lossy.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .cover import CoverInstance
from .geometry import PlacedWedge, Point, Polygon, Wedge
from .oracle import Region


class FormatError(ValueError):
    """Malformed or inconsistent instance file."""


KINDS = ("points", "polygon", "cover", "witness-request")


def num(x) -> Fraction:
    if isinstance(x, bool):
        raise FormatError("booleans are not numbers")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise FormatError(f"bad number {x!r}") from e
    raise FormatError(f"numbers must be integers or strings, got {x!r}")


def enc(x) -> int | str:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def point(obj) -> Point:
    if not isinstance(obj, (list, tuple)) or len(obj) != 2:
        raise FormatError(f"a point is a pair [x, y], got {obj!r}")
    return Point(num(obj[0]), num(obj[1]))


def enc_point(p) -> list:
    return [enc(p[0]), enc(p[1])]


def _int_pair(obj) -> tuple[int, int]:
    a, b = point(obj)
    if a.denominator != 1 or b.denominator != 1:
        # a rational direction is the same direction as its scaled integer vector
        d = a.denominator * b.denominator
        a, b = a * d, b * d
    return int(a), int(b)


def wedge(obj) -> Wedge:
    if not isinstance(obj, dict) or "dir1" not in obj or "dir2" not in obj:
        raise FormatError("a wedge is an object with dir1 and dir2")
    closed = obj.get("closed", False)
    if not isinstance(closed, bool):
        raise FormatError("closed must be a boolean")
    return Wedge.from_vectors(_int_pair(obj["dir1"]), _int_pair(obj["dir2"]), closed)


def enc_wedge(w: Wedge) -> dict:
    return {"dir1": [w.dir1.dx, w.dir1.dy], "dir2": [w.dir2.dx, w.dir2.dy], "closed": w.closed}


def polygon(obj) -> Polygon:
    if not isinstance(obj, list):
        raise FormatError("a polygon is a list of vertices")
    return Polygon(tuple(point(v) for v in obj))


def enc_polygon(p: Polygon) -> list:
    return [enc_point(v) for v in p.vertices]


def region(obj) -> Region:
    if not isinstance(obj, list) or len(obj) != 4:
        raise FormatError("a region is [x0, y0, x1, y1]")
    return Region.of(*(num(x) for x in obj))


def enc_region(r: Region) -> list:
    return [enc(x) for x in r]


def enc_placed(pw: PlacedWedge) -> dict:
    return {"wedge": enc_wedge(pw.wedge), "apex": enc_point(pw.apex)}


def placed(obj) -> PlacedWedge:
    return PlacedWedge(wedge(obj["wedge"]), point(obj["apex"]))


def cover(obj: dict) -> CoverInstance:
    for key in ("polygon", "centers", "region"):
        if key not in obj:
            raise FormatError(f"cover instance lacks {key!r}")
    fold = obj.get("fold")
    if fold is not None and (not isinstance(fold, int) or isinstance(fold, bool)):
        raise FormatError("fold must be an integer")
    inst = CoverInstance(polygon(obj["polygon"]), [point(c) for c in obj["centers"]],
                         region(obj["region"]), fold if fold is not None else -1)
    return inst


def enc_cover(c: CoverInstance) -> dict:
    return {"kind": "cover", "polygon": enc_polygon(c.polygon), "centers": [enc_point(p) for p in c.centers],
            "region": enc_region(c.region), "fold": c.fold}


def load(text: str) -> dict:
    """Parse and validate the envelope of an instance file."""
    try:
        obj = json.loads(text, parse_float=_refuse_float)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e}") from e
    if not isinstance(obj, dict):
        raise FormatError("top level must be an object")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise FormatError(f"kind must be one of {KINDS}")
    return obj


def _refuse_float(s: str):
    raise FormatError(f"float {s} is not exact; write it as a string such as \"1/3\"")


_LEAF_LIST = re.compile(r"\[\s+([^\[\]{}\"]*(?:\"[^\"]*\"[^\[\]{}\"]*)*)\s+\]")


def dumps(obj: Any) -> str:
    """Indented JSON with innermost arrays (points, index lists) kept on one line."""
    text = json.dumps(obj, indent=2)
    text = _LEAF_LIST.sub(lambda m: "[" + re.sub(r",\s+", ", ", m.group(1).strip()) + "]", text)
    return text + "\n"


def read_instance(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return load(fh.read())


def points_instance(obj: dict) -> tuple[list[Point], list[Wedge], Polygon | None]:
    """Points plus a wedge system given directly or as a polygon's vertex wedges."""
    from .geometry import polygon_wedges
    pts = [point(p) for p in obj.get("points", [])]
    poly = polygon(obj["polygon"]) if "polygon" in obj else None
    if "wedges" in obj:
        ws = [wedge(w) for w in obj["wedges"]]
    elif poly is not None:
        ws = polygon_wedges(poly)
    else:
        raise FormatError("need wedges or a polygon")
    if not ws:
        raise FormatError("need at least one wedge")
    return pts, ws, poly
