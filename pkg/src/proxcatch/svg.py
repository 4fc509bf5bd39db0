"""Minimal SVG output for region figures: fixed 800x800 viewBox, y-axis
flipped, fixed colors (triangle black, cells gray, covering region shaded,
sample dots black) so that figures diff on path data alone."""

from __future__ import annotations

from typing import Optional, Sequence

from .gamma import Gamma1Region
from .geom import ConvexPolygon, Point2, Triangle
from .regions import RegionPartition

SIZE = 800
MARGIN = 40


def _frame(t: Triangle):
    xs = [v[0] for v in t.vertices]
    ys = [v[1] for v in t.vertices]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or 1.0
    s = (SIZE - 2 * MARGIN) / span

    def world_to_svg(p: Point2) -> tuple[float, float]:
        return (MARGIN + (p[0] - x0) * s, SIZE - MARGIN - (p[1] - y0) * s)

    return world_to_svg


def _path(poly: ConvexPolygon, to_svg) -> str:
    if len(poly) < 2:
        return ""
    coords = [to_svg(v) for v in poly.vertices]
    head = f"M {coords[0][0]:.3f} {coords[0][1]:.3f} "
    body = " ".join(f"L {x:.3f} {y:.3f}" for x, y in coords[1:])
    return head + body + " Z"


def render_figure(
    t: Triangle,
    partition: Optional[RegionPartition] = None,
    gamma1: Optional[Gamma1Region] = None,
    points: Sequence[Point2] = (),
) -> str:
    to_svg = _frame(t)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" '
        f'width="{SIZE}" height="{SIZE}">'
    ]
    if gamma1 is not None:
        if gamma1.point is not None:
            x, y = to_svg(gamma1.point)
            parts.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="4" fill="#999999"/>')
        for piece in gamma1.pieces:
            d = _path(piece, to_svg)
            if d:
                parts.append(f'<path d="{d}" fill="#c8c8c8" stroke="none"/>')
    if partition is not None:
        for cell in partition.cells:
            d = _path(cell, to_svg)
            if d:
                parts.append(f'<path d="{d}" fill="none" stroke="#888888" stroke-width="1"/>')
    d = _path(ConvexPolygon(t.vertices), to_svg)
    parts.append(f'<path d="{d}" fill="none" stroke="#000000" stroke-width="2"/>')
    for p in points:
        x, y = to_svg(p)
        parts.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="3" fill="#000000"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
