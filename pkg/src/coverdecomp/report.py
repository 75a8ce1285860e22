"""PNG figures and CSV tables for an instance file.

Every table row is produced from oracle checks (achieved thresholds,
per-class coverage, exhaustive certificates), never from the claims alone.
"""

from __future__ import annotations

import csv
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Polygon as MplPolygon  # noqa: E402

from . import io as jio  # noqa: E402
from .classify import classify_pair, is_convex  # noqa: E402
from .coloring import color_wedge_system  # noqa: E402
from .cover import decompose_cover, decompose_cover_s  # noqa: E402
from .errors import SpecialPairPresent, TooLarge  # noqa: E402
from .geometry import polygon_wedges, rotate_to_general_position  # noqa: E402
from .oracle import RED, min_coverage, verified_threshold, verify_covering  # noqa: E402
from .render import BLUE_HEX, CLASS_HEX, GREY_HEX, RED_HEX  # noqa: E402
from .witness import certify_indecomposable, construct_witness, polygon_witness  # noqa: E402

_PNG_META = {"Software": None}


def _xy(points):
    return [float(p[0]) for p in points], [float(p[1]) for p in points]


def _figure():
    fig, ax = plt.subplots(figsize=(6, 6), dpi=100)
    ax.set_aspect("equal")
    ax.margins(0.05)
    return fig, ax


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, metadata=_PNG_META)
    plt.close(fig)
    return path


def _csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    return path


def _points_report(obj, out, seed):
    pts, ws, _ = jio.points_instance(obj)
    _, local = rotate_to_general_position(pts, ws, seed=seed)
    try:
        res = color_wedge_system(local, ws)
    except SpecialPairPresent as e:
        return [_csv(os.path.join(out, "special_pair.csv"), ["i", "j"], [list(e.indices)])]
    files = []
    fig, ax = _figure()
    for col, hexc, name in ((RED, RED_HEX, "red"), (1 - RED, BLUE_HEX, "blue")):
        sel = [p for p, c in zip(pts, res.colors) if c == col]
        xs, ys = _xy(sel)
        ax.scatter(xs, ys, s=12, c=hexc, label=f"{name} ({len(sel)})")
    ax.legend(loc="upper right")
    ax.set_title(f"{len(pts)} points, {len(ws)} wedges")
    files.append(_save(fig, os.path.join(out, "coloring.png")))
    rows = []
    for i, r in enumerate(res.requirements):
        rows.append([i, f"{r.wedge.dir1.dx} {r.wedge.dir1.dy}", f"{r.wedge.dir2.dx} {r.wedge.dir2.dy}",
                     r.need, r.threshold, verified_threshold(pts, res.colors, r.wedge, r.need)])
    files.append(_csv(os.path.join(out, "thresholds.csv"),
                      ["requirement", "dir1", "dir2", "need", "claimed", "achieved"], rows))
    files.append(_csv(os.path.join(out, "colors.csv"), ["x", "y", "color"],
                      [[jio.enc(p[0]), jio.enc(p[1]), "red" if c == RED else "blue"]
                       for p, c in zip(pts, res.colors)]))
    return files


def _polygon_report(obj, out, seed):
    poly = jio.polygon(obj.get("vertices", obj.get("polygon")))
    ws = polygon_wedges(poly)
    rows = [[i, j, str(classify_pair(ws[i], ws[j]))] for i in range(len(ws)) for j in range(i + 1, len(ws))]
    fig, ax = _figure()
    ax.add_patch(MplPolygon(_pairs(poly.vertices), closed=True, fill=False, edgecolor=GREY_HEX))
    for i, v in enumerate(poly.vertices):
        ax.annotate(str(i), (float(v.x), float(v.y)))
    ax.autoscale_view()
    ax.set_title("convex" if is_convex(poly) else "not convex")
    return [_save(fig, os.path.join(out, "polygon.png")),
            _csv(os.path.join(out, "pairs.csv"), ["i", "j", "type"], rows)]


def _pairs(points):
    return [(float(p[0]), float(p[1])) for p in points]


def _cover_report(obj, out, seed):
    inst = jio.cover(obj)
    if inst.fold < 0:
        inst.fold = min_coverage(inst.polygon, inst.centers, inst.region)
    s = obj.get("s", 2)
    # figures are diagnostic, so the proven fold bound is not enforced here
    dec = (decompose_cover(inst, "unchecked", verify=False, seed=seed) if s == 2
           else decompose_cover_s(inst, s, "unchecked", verify=False, seed=seed))
    rows = []
    for label in range(1, dec.s + 1):
        members = dec.members(label)
        gap = verify_covering(inst.polygon, [inst.centers[i] for i in members], inst.region)
        rows.append([label, len(members), gap is None,
                     "" if gap is None else f"{jio.enc(gap.point[0])} {jio.enc(gap.point[1])}"])
    fig, axes = plt.subplots(1, dec.s, figsize=(4 * dec.s, 4), dpi=100, squeeze=False)
    x0, y0, x1, y1 = (float(v) for v in inst.region)
    for label, ax in enumerate(axes[0], start=1):
        for i in dec.members(label):
            ax.add_patch(MplPolygon(_pairs(inst.translate(i).vertices), closed=True, alpha=0.15,
                                    facecolor=CLASS_HEX[(label - 1) % len(CLASS_HEX)], edgecolor="none"))
        ax.plot([x0, x1, x1, x0, x0], [y0, y0, y1, y1, y0], "k--", lw=1)
        ax.set_aspect("equal")
        ax.autoscale_view()
        ax.set_title(f"class {label}: {'covers' if rows[label - 1][2] else 'gap'}")
    files = [_save(fig, os.path.join(out, "cover.png"))]
    files.append(_csv(os.path.join(out, "coverage.csv"), ["class", "translates", "covers", "gap"], rows))
    files.append(_csv(os.path.join(out, "classes.csv"), ["x", "y", "class"],
                      [[jio.enc(c.x), jio.enc(c.y), k] for c, k in zip(inst.centers, dec.classes)]))
    files.append(_csv(os.path.join(out, "summary.csv"), ["quantity", "value"],
                      [["fold", inst.fold], ["required_fold", dec.required_fold], ["K", dec.K], ["k", dec.k]]))
    return files


def _witness_report(obj, out, seed):
    k = obj.get("k", 2)
    if "wedges" in obj:
        v, w = (jio.wedge(x) for x in obj["wedges"])
        wi = construct_witness(v, w, k, obj.get("l", k))
    else:
        wi = polygon_witness(jio.polygon(obj.get("polygon", obj.get("vertices"))), k)
    fig, ax = _figure()
    for poly, hexc in [(p, RED_HEX) for p in wi.v_polygons] + [(p, BLUE_HEX) for p in wi.w_polygons]:
        ax.add_patch(MplPolygon(_pairs(poly.vertices), closed=True, fill=False, edgecolor=hexc, lw=0.6))
    xs, ys = _xy(wi.points)
    ax.scatter(xs, ys, s=14, c="k", zorder=3)
    ax.autoscale_view()
    ax.set_title(f"S({wi.k},{wi.l}): {len(wi)} points")
    try:
        cert = certify_indecomposable(wi)
        row = [len(wi), cert.total, cert.defeated]
    except TooLarge:
        row = [len(wi), "", ""]
    return [_save(fig, os.path.join(out, "witness.png")),
            _csv(os.path.join(out, "certificate.csv"), ["points", "colorings", "defeated"], [row])]


_HANDLERS = {"points": _points_report, "polygon": _polygon_report, "cover": _cover_report,
             "witness-request": _witness_report}


def write_report(obj: dict, out: str, seed: int = 0) -> list[str]:
    """Write figures and tables for a loaded instance into ``out``; returns the paths."""
    os.makedirs(out, exist_ok=True)
    return _HANDLERS[obj["kind"]](obj, out, seed)
