"""Region partitions of a triangle and superset regions of proximity maps.

Vertex regions split the triangle into three cells, one per vertex, by
extending the segments joining an interior point M to the vertices until they
hit the opposite edges.  Edge regions join M to the vertices instead, giving
one cell per edge.  The superset region of a proximity map is the set of
points whose proximity region is the whole triangle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional, Sequence

from .geom import (
    EPS,
    CenterSelector,
    ConvexPolygon,
    HalfPlane,
    Point2,
    Triangle,
    barycentric_coeffs,
    center,
    convex_hull,
    triangle_polygon,
)


@dataclass(frozen=True)
class RegionPartition:
    """Three cells partitioning a triangle around the point M.

    For kind "vertex", cell i holds vertex i on its boundary; for kind "edge",
    cell i abuts edge i (the edge opposite vertex i).  Indices are 0-based.
    """

    kind: Literal["vertex", "edge"]
    triangle: Triangle
    m: Point2
    cells: tuple[ConvexPolygon, ConvexPolygon, ConvexPolygon]


def _resolve_center(t: Triangle, sel: CenterSelector) -> Point2:
    m = center(t, sel)
    if not t.contains(m, EPS):
        raise ValueError(f"center {tuple(m)} lies outside the closed triangle")
    return m


def _cevian_foot(t: Triangle, m: Point2, j: int) -> Point2:
    """Intersection of the ray from vertex j through m with the opposite edge."""
    a, b = t.edge(j)
    v = t.vertices[j]
    # solve v + s(m - v) = a + u(b - a)
    dx, dy = m[0] - v[0], m[1] - v[1]
    ex, ey = b[0] - a[0], b[1] - a[1]
    den = dx * ey - dy * ex
    if abs(den) <= EPS:
        raise ValueError("center collinear with a vertex and its opposite edge direction")
    u = (dx * (a[1] - v[1]) - dy * (a[0] - v[0])) / -den
    u = min(1.0, max(0.0, u))
    return Point2(a[0] + u * ex, a[1] + u * ey)


def vertex_regions(t: Triangle, sel: CenterSelector) -> RegionPartition:
    """M-vertex regions built from straight cevian extensions through M."""
    m = _resolve_center(t, sel)
    feet = [_cevian_foot(t, m, j) for j in range(3)]
    cells = []
    for i in range(3):
        cells.append(ConvexPolygon([t.vertices[i], feet[(i + 2) % 3], m, feet[(i + 1) % 3]]))
    return RegionPartition("vertex", t, m, tuple(cells))  # type: ignore[arg-type]


def edge_regions(t: Triangle, sel: CenterSelector) -> RegionPartition:
    """M-edge regions: cell i is the triangle (M, endpoints of edge i)."""
    m = center(t, sel)
    if not all(b > EPS for b in t.barycentric(m)):
        raise ValueError(f"edge regions need M strictly inside the triangle, got {tuple(m)}")
    cells = []
    for i in range(3):
        a, b = t.edge(i)
        cells.append(ConvexPolygon([m, a, b]))
    return RegionPartition("edge", t, m, tuple(cells))  # type: ignore[arg-type]


def locate(part: RegionPartition, x: Point2, eps: float = EPS) -> int:
    """Index (0..2) of the cell containing x; boundary ties go to the smallest index."""
    for i, cell in enumerate(part.cells):
        if cell.contains(x, eps):
            return i
    if part.triangle.contains(x, 1e-7):
        return min(range(3), key=lambda i: part.cells[i].distance(x))
    raise ValueError(f"point {tuple(x)} lies outside the triangle")


def pe_core_triangle(r: float, params) -> ConvexPolygon:
    """Inner triangle of centers with an empty superset region (basic frame).

    Built by clipping ((0,0),(1,0),(c1,c2)) with the three half-planes
    y >= c2(r-1)/r, y <= c2(1-rx)/(r(1-c1)), y <= c2(r(x-1)+1)/(r c1).
    Shrinks to the centroid at r = 3/2 and is empty beyond.
    """
    if not r >= 1.0:
        raise ValueError(f"scale factor r must be >= 1, got {r}")
    c1, c2 = params.c1, params.c2
    t = params.triangle()
    if r > 1.5 + 1e-12:
        return ConvexPolygon()
    if abs(r - 1.5) <= 1e-12:
        return ConvexPolygon([center(t, "centroid")])
    poly = triangle_polygon(t)
    poly = poly.clip(HalfPlane.from_coeffs(0.0, -1.0, -c2 * (r - 1.0) / r))
    poly = poly.clip(HalfPlane.from_coeffs(c2 * r, r * (1.0 - c1), c2))
    poly = poly.clip(HalfPlane.from_coeffs(-c2 * r, r * c1, c2 * (1.0 - r)))
    return poly


def core_triangle(t: Triangle, r: float) -> ConvexPolygon:
    """Same core triangle in an arbitrary frame: {p : beta_i(p) >= (r-1)/r for all i}."""
    if not r >= 1.0:
        raise ValueError(f"scale factor r must be >= 1, got {r}")
    if math.isinf(r):
        return ConvexPolygon()
    if r > 1.5 + 1e-12:
        return ConvexPolygon()
    if abs(r - 1.5) <= 1e-12:
        return ConvexPolygon([center(t, "centroid")])
    lo = (r - 1.0) / r
    hi = (2.0 - r) / r
    verts = []
    for i in range(3):
        b = [lo, lo, lo]
        b[i] = hi
        verts.append(t.point_at(b))
    return ConvexPolygon(verts)


@dataclass(frozen=True)
class SupersetRegion:
    """Empty, a single point, or a union of per-cell convex pieces."""

    kind: Literal["empty", "point", "polygon"]
    point: Optional[Point2] = None
    pieces: tuple[ConvexPolygon, ...] = ()

    @staticmethod
    def empty() -> "SupersetRegion":
        return SupersetRegion("empty")

    @staticmethod
    def single_point(p: Point2) -> "SupersetRegion":
        return SupersetRegion("point", point=Point2(*p))

    @staticmethod
    def from_pieces(pieces: Sequence[ConvexPolygon]) -> "SupersetRegion":
        kept = tuple(p for p in pieces if p.area() > EPS)
        if not kept:
            return SupersetRegion.empty()
        return SupersetRegion("polygon", pieces=kept)

    def area(self) -> float:
        return sum(p.area() for p in self.pieces)

    def contains(self, p: Point2, eps: float = EPS) -> bool:
        if self.kind == "empty":
            return False
        if self.kind == "point":
            assert self.point is not None
            return math.hypot(p[0] - self.point[0], p[1] - self.point[1]) <= eps
        return any(piece.contains(p, eps) for piece in self.pieces)

    def polygon(self) -> ConvexPolygon:
        """The merged region when the union of pieces is convex.

        Raises ValueError when the union is not convex (possible for
        off-center M); use `pieces` directly in that case.
        """
        if self.kind != "polygon":
            return ConvexPolygon([self.point] if self.kind == "point" else [])
        hull = convex_hull([v for p in self.pieces for v in p.vertices])
        if abs(hull.area() - self.area()) > 1e-7 * max(1.0, hull.area()):
            raise ValueError("superset region is a non-convex union of pieces")
        return hull.simplified()


def superset_region(spec) -> SupersetRegion:
    """Superset region of a proximity map spec (see proximity.ProximityMapSpec).

    Proportional-edge: assembled by clipping each vertex cell with the
    half-plane of points at least d(vertex, edge)/r away from the vertex;
    classified as empty / {M} / positive-area via the core triangle.
    """
    family = spec.family
    if family == "spherical":
        return SupersetRegion.empty()
    if family == "interval":
        ys = spec.anchors
        if len(ys) != 2:
            raise ValueError("superset region is defined per cell; give a two-point anchor set")
        return SupersetRegion.single_point(Point2((ys[0] + ys[1]) / 2.0, 0.0))
    if family == "arcslice":
        t = spec.triangle
        try:
            cc = center(t, "circumcenter")
        except ValueError:
            return SupersetRegion.empty()
        return SupersetRegion.single_point(cc) if t.contains(cc, EPS) else SupersetRegion.empty()
    if family == "cs":
        m = spec.center_point()
        return SupersetRegion.single_point(m) if abs(spec.tau - 1.0) <= 1e-12 else SupersetRegion.empty()
    if family != "pe":
        raise ValueError(f"unknown proximity family {family!r}")

    t = spec.triangle
    r = spec.r
    if math.isinf(r):
        return SupersetRegion.from_pieces([triangle_polygon(t)])
    part = spec.vertex_partition()
    m = part.m
    core = core_triangle(t, r)
    if not core.is_empty:
        if core.boundary_distance(m) <= EPS:
            return SupersetRegion.single_point(m)
        if core.contains(m, 0.0):
            return SupersetRegion.empty()
    coeffs = barycentric_coeffs(t)
    pieces = []
    for i in range(3):
        a, b, c = coeffs[i]
        bound = (r - 1.0) / r
        pieces.append(part.cells[i].clip(HalfPlane.from_coeffs(a, b, bound - c)))
    return SupersetRegion.from_pieces(pieces)


def medial_triangle(t: Triangle) -> ConvexPolygon:
    """Triangle of the three edge midpoints."""
    mids = []
    for i in range(3):
        a, b = t.edge(i)
        mids.append(Point2((a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0))
    return ConvexPolygon(mids)
