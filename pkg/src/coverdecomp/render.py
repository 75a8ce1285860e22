"""Deterministic SVG drawings of colored point sets, wedges and coverings.

Output depends only on the input: coordinates are rounded to fixed precision,
elements are emitted in input order, and nothing time- or platform-dependent
is written.
"""

from __future__ import annotations

from typing import Iterable, Sequence
from xml.sax.saxutils import escape

from .geometry import PlacedWedge, Polygon

RED_HEX = "#d62728"
BLUE_HEX = "#1f77b4"
GREY_HEX = "#7f7f7f"
CLASS_HEX = [RED_HEX, BLUE_HEX, "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"]
SIZE = 600
MARGIN = 0.05


def _fmt(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class Canvas:
    """Maps plane coordinates onto a square viewport with a 5% margin; y points up."""

    def __init__(self, xs: Iterable[float], ys: Iterable[float], size: int = SIZE):
        xs, ys = list(xs) or [0.0], list(ys) or [0.0]
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
        span = max(x1 - x0, y1 - y0) or 1.0
        cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
        self.x0, self.y0 = cx - span / 2, cy - span / 2
        self.span = span
        self.size = size
        self.inner = size * (1 - 2 * MARGIN)
        self.items: list[str] = []

    def xy(self, p) -> tuple[str, str]:
        x = self.size * MARGIN + (float(p[0]) - self.x0) / self.span * self.inner
        y = self.size * MARGIN + (1 - (float(p[1]) - self.y0) / self.span) * self.inner
        return _fmt(x), _fmt(y)

    @property
    def bounds(self):
        """Plane coordinates of the full viewport, margin included."""
        pad = self.span * MARGIN / (1 - 2 * MARGIN)
        return self.x0 - pad, self.y0 - pad, self.x0 + self.span + pad, self.y0 + self.span + pad

    def circle(self, p, r: float, fill: str, stroke: str = "none"):
        x, y = self.xy(p)
        self.items.append(f'<circle cx="{x}" cy="{y}" r="{_fmt(r)}" fill="{fill}" stroke="{stroke}"/>')

    def polygon(self, pts, stroke: str, fill: str = "none", width: float = 1.0, opacity: float = 1.0):
        coords = " ".join(",".join(self.xy(p)) for p in pts)
        self.items.append(f'<polygon points="{coords}" fill="{fill}" stroke="{stroke}" '
                          f'stroke-width="{_fmt(width)}" stroke-opacity="{_fmt(opacity)}" '
                          f'fill-opacity="{_fmt(opacity / 4)}"/>')

    def polyline(self, pts, stroke: str, width: float = 1.0, dash: str | None = None):
        coords = " ".join(",".join(self.xy(p)) for p in pts)
        d = f' stroke-dasharray="{dash}"' if dash else ""
        self.items.append(f'<polyline points="{coords}" fill="none" stroke="{stroke}" '
                          f'stroke-width="{_fmt(width)}"{d}/>')

    def wedge(self, pw: PlacedWedge, stroke: str, width: float = 1.5):
        """Both sides of the wedge, cut where they leave the viewport."""
        x0, y0, x1, y1 = self.bounds
        reach = 2 * max(x1 - x0, y1 - y0)
        ax, ay = float(pw.apex[0]), float(pw.apex[1])
        ends = []
        for d in pw.wedge.sides:
            n = (d[0] ** 2 + d[1] ** 2) ** 0.5
            ends.append((ax + d[0] / n * reach, ay + d[1] / n * reach))
        self.polyline([ends[0], (ax, ay), ends[1]], stroke, width, dash="6,3")

    def text(self, p, s: str, size: int = 10, fill: str = "#000000"):
        x, y = self.xy(p)
        self.items.append(f'<text x="{x}" y="{y}" font-size="{size}" font-family="monospace" '
                          f'fill="{fill}">{escape(s)}</text>')

    def svg(self, title: str = "") -> str:
        head = (f'<?xml version="1.0" encoding="UTF-8"?>\n'
                f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{self.size}" '
                f'height="{self.size}" viewBox="0 0 {self.size} {self.size}">\n')
        t = f"<title>{escape(title)}</title>\n" if title else ""
        bg = f'<rect x="0" y="0" width="{self.size}" height="{self.size}" fill="#ffffff"/>\n'
        # clip wedge sides to the drawing area
        body = "\n".join(self.items)
        return (head + t + '<defs><clipPath id="view"><rect x="0" y="0" '
                f'width="{self.size}" height="{self.size}"/></clipPath></defs>\n' + bg
                + f'<g clip-path="url(#view)">\n{body}\n</g>\n</svg>\n')


def color_hex(c: int) -> str:
    return RED_HEX if c == 0 else BLUE_HEX


def _radius(n: int) -> float:
    return max(2.0, min(6.0, 120.0 / max(n, 1) ** 0.5))


def coloring_svg(points: Sequence, colors: Sequence[int], highlight: Sequence[PlacedWedge] = (),
                 title: str = "") -> str:
    """Red/blue dots; ``highlight`` translates (e.g. violations) are outlined."""
    cv = Canvas([float(p[0]) for p in points], [float(p[1]) for p in points])
    for pw in highlight:
        cv.wedge(pw, "#000000")
    r = _radius(len(points))
    for p, c in zip(points, colors):
        cv.circle(p, r, color_hex(c))
    return cv.svg(title)


def witness_svg(points: Sequence, v_translates: Sequence[PlacedWedge], w_translates: Sequence[PlacedWedge],
                polygons: Sequence[Polygon] = (), title: str = "") -> str:
    xs = [float(p[0]) for p in points] + [float(t.apex[0]) for t in list(v_translates) + list(w_translates)]
    ys = [float(p[1]) for p in points] + [float(t.apex[1]) for t in list(v_translates) + list(w_translates)]
    cv = Canvas(xs, ys)
    for poly in polygons:
        cv.polygon(poly.vertices, GREY_HEX, opacity=0.3)
    for t in v_translates:
        cv.wedge(t, RED_HEX, 0.8)
    for t in w_translates:
        cv.wedge(t, BLUE_HEX, 0.8)
    r = _radius(len(points))
    for i, p in enumerate(points):
        cv.circle(p, r, "#000000")
    return cv.svg(title)


def cover_svg(translates: Sequence[Polygon], classes: Sequence[int], region, title: str = "") -> str:
    """Translates outlined in their class color, the region dashed."""
    x0, y0, x1, y1 = (float(x) for x in region)
    cv = Canvas([x0, x1], [y0, y1])
    for poly, c in zip(translates, classes):
        cv.polygon(poly.vertices, CLASS_HEX[(c - 1) % len(CLASS_HEX)], width=0.5, opacity=0.5)
    cv.polyline([(x0, y0), (x1, y0), (x1, y1), (x0, y1), (x0, y0)], "#000000", 1.5, dash="4,2")
    return cv.svg(title)
