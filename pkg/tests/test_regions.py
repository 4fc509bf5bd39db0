import math

import numpy as np
import pytest

from proxcatch import (
    BasicTriangleParams,
    Point2,
    ProximityMapSpec,
    Triangle,
    center,
    core_triangle,
    edge_regions,
    locate,
    medial_triangle,
    pe_core_triangle,
    superset_region,
    vertex_regions,
)
from proxcatch.geom import point_line_distance
from proxcatch.proximity import contains
from proxcatch.sim import rng_for, sample_uniform_triangle

from conftest import random_interior_point, random_triangle

SQRT3 = math.sqrt(3.0)


class TestVertexRegions:
    def test_centroid_equilateral_equal_thirds(self, t_eq):
        part = vertex_regions(t_eq, "centroid")
        for cell in part.cells:
            assert cell.area() == pytest.approx(SQRT3 / 12.0)

    def test_centroid_always_trisects(self, t_basic):
        # median construction trisects the area of any triangle
        part = vertex_regions(t_basic, "centroid")
        for cell in part.cells:
            assert cell.area() == pytest.approx(t_basic.area() / 3.0)

    def test_cells_partition_area(self):
        rng = np.random.default_rng(31)
        for _ in range(20):
            t = random_triangle(rng)
            m = random_interior_point(t, rng)
            part = vertex_regions(t, m)
            assert sum(c.area() for c in part.cells) == pytest.approx(t.area(), abs=1e-10)

    def test_own_vertex_on_boundary(self, t_eq):
        part = vertex_regions(t_eq, "incenter")
        for i, cell in enumerate(part.cells):
            assert cell.contains(t_eq.vertices[i], 1e-9)
            for j in range(3):
                if j != i:
                    assert not cell.contains(t_eq.vertices[j], 1e-6)

    def test_m_on_all_three_cells(self, t_eq):
        part = vertex_regions(t_eq, "centroid")
        for cell in part.cells:
            assert cell.contains(part.m, 1e-9)

    def test_center_outside_rejected(self, t_eq):
        with pytest.raises(ValueError):
            vertex_regions(t_eq, Point2(2.0, 2.0))

    def test_circumcenter_of_obtuse_rejected(self):
        t = Triangle(Point2(0, 0), Point2(1, 0), Point2(0.5, 0.1))
        with pytest.raises(ValueError):
            vertex_regions(t, "circumcenter")


class TestEdgeRegions:
    def test_centroid_equilateral_equal_thirds(self, t_eq):
        part = edge_regions(t_eq, "centroid")
        for cell in part.cells:
            assert cell.area() == pytest.approx(SQRT3 / 12.0)

    def test_cell_is_triangle_of_m_and_edge(self, t_basic):
        part = edge_regions(t_basic, "incenter")
        for i in range(3):
            a, b = t_basic.edge(i)
            verts = set(tuple(np.round(v, 12)) for v in part.cells[i].vertices)
            assert tuple(np.round(a, 12)) in verts
            assert tuple(np.round(b, 12)) in verts

    def test_area_formula(self, t_basic):
        part = edge_regions(t_basic, "centroid")
        for i in range(3):
            a, b = t_basic.edge(i)
            expected = point_line_distance(part.m, a, b) * math.dist(a, b) / 2.0
            assert part.cells[i].area() == pytest.approx(expected)

    def test_boundary_center_rejected(self, t_eq):
        with pytest.raises(ValueError):
            edge_regions(t_eq, Point2(0.5, 0.0))


class TestLocate:
    def test_vertex_goes_to_own_cell(self, t_eq):
        part = vertex_regions(t_eq, "centroid")
        for i, v in enumerate(t_eq.vertices):
            assert locate(part, v) == i

    def test_m_tie_breaks_to_zero(self, t_eq):
        part = vertex_regions(t_eq, "centroid")
        assert locate(part, part.m) == 0

    def test_outside_raises(self, t_eq):
        part = vertex_regions(t_eq, "centroid")
        with pytest.raises(ValueError):
            locate(part, Point2(5.0, 5.0))

    def test_agrees_with_barycentric_argmax_for_centroid(self, t_eq):
        # independent containment rule: with the centroid, the vertex cell is
        # the region where that vertex's barycentric coordinate is maximal
        part = vertex_regions(t_eq, "centroid")
        pts = sample_uniform_triangle(2000, t_eq, rng_for(5, 2000, 0))
        for p in pts[:500]:
            x = Point2(*p)
            b = t_eq.barycentric(x)
            if sorted(b)[2] - sorted(b)[1] < 1e-6:
                continue  # too close to a median to compare
            assert locate(part, x) == int(np.argmax(b))

    def test_partition_property(self):
        rng = np.random.default_rng(17)
        t = random_triangle(rng)
        m = random_interior_point(t, rng)
        part = vertex_regions(t, m)
        pts = sample_uniform_triangle(10_000, t, rng)
        for p in pts:
            x = Point2(*p)
            strict = [i for i, c in enumerate(part.cells) if c.contains(x, -1e-9)]
            if len(strict) != 1:
                assert min(c.boundary_distance(x) for c in part.cells) < 1e-7

    def test_polygon_locate_agrees_with_sign_tests(self):
        # dual containment routes: polygon membership vs the vectorized
        # cevian sign tests, for a general interior center
        from proxcatch import ProximityMapSpec
        from proxcatch.proximity import edge_cells, vertex_cells

        rng = np.random.default_rng(18)
        t = random_triangle(rng)
        m = random_interior_point(t, rng)
        spec_pe = ProximityMapSpec.pe(t, 2.0, m)
        spec_cs = ProximityMapSpec.cs(t, 0.5, m)
        pts = sample_uniform_triangle(3000, t, rng)
        v_cells = vertex_cells(spec_pe, pts)
        e_cells = edge_cells(spec_cs, pts)
        v_part = spec_pe.vertex_partition()
        e_part = spec_cs.edge_partition()
        for k in range(0, 3000, 7):
            x = Point2(*pts[k])
            if min(c.boundary_distance(x) for c in v_part.cells) > 1e-7:
                assert locate(v_part, x) == v_cells[k]
            if min(c.boundary_distance(x) for c in e_part.cells) > 1e-7:
                assert locate(e_part, x) == e_cells[k]


class TestCoreTriangle:
    def test_r1_is_whole_triangle(self, params_eq):
        poly = pe_core_triangle(1.0, params_eq)
        assert poly.area() == pytest.approx(SQRT3 / 4.0)

    def test_area_matches_homothety_oracle(self):
        # oracle: the core is the centroid homothety with ratio (3-2r)/r
        rng = np.random.default_rng(3)
        for _ in range(20):
            c1 = rng.uniform(0.1, 0.5)
            c2 = rng.uniform(0.2, 1.0)
            r = rng.uniform(1.0, 1.49)
            params = BasicTriangleParams(c1, c2)
            t = params.triangle()
            expected = ((3.0 - 2.0 * r) / r) ** 2 * t.area()
            assert pe_core_triangle(r, params).area() == pytest.approx(expected, rel=1e-9)
            assert core_triangle(t, r).area() == pytest.approx(expected, rel=1e-9)

    def test_degenerates_to_point_then_empty(self, params_eq):
        assert pe_core_triangle(1.499, params_eq).area() < 1e-5
        point_poly = pe_core_triangle(1.5, params_eq)
        assert point_poly.is_point
        assert math.dist(point_poly.vertices[0], center(params_eq.triangle(), "centroid")) < 1e-12
        assert pe_core_triangle(2.0, params_eq).is_empty

    def test_positive_area_below_threshold(self, params_eq):
        poly = pe_core_triangle(1.4, params_eq)
        assert poly.area() > 0
        assert len(poly.simplified()) == 3


class TestSupersetRegion:
    def test_pe_r2_centroid_is_medial_triangle(self, t_eq, t_basic):
        for t in (t_eq, t_basic):
            spec = ProximityMapSpec.pe(t, 2.0)
            rs = superset_region(spec)
            assert rs.kind == "polygon"
            assert rs.area() == pytest.approx(t.area() / 4.0)
            assert rs.polygon().equals(medial_triangle(t), 1e-9)

    def test_pe_r_three_halves_centroid_single_point(self, t_eq):
        spec = ProximityMapSpec.pe(t_eq, 1.5)
        rs = superset_region(spec)
        assert rs.kind == "point"
        assert math.dist(rs.point, center(t_eq, "centroid")) < 1e-9
        assert rs.area() == 0.0

    def test_pe_small_r_centroid_empty(self, t_eq):
        rs = superset_region(ProximityMapSpec.pe(t_eq, 1.2))
        assert rs.kind == "empty"

    def test_pe_r_infinity_everything(self, t_eq):
        rs = superset_region(ProximityMapSpec.pe(t_eq, math.inf))
        assert rs.area() == pytest.approx(t_eq.area())

    def test_pe_area_fraction_oracle(self, t_eq):
        # inclusion-exclusion oracle for the centroid: the region is
        # {max beta <= (r-1)/r}, of fraction 1 - 3(1-c)^2 + 3 max(0, 1-2c)^2
        for r in (1.6, 2.0, 2.5, 3.0):
            c = (r - 1.0) / r
            frac = 1.0 - 3.0 * (1.0 - c) ** 2 + 3.0 * max(0.0, 1.0 - 2.0 * c) ** 2
            rs = superset_region(ProximityMapSpec.pe(t_eq, r))
            assert rs.area() / t_eq.area() == pytest.approx(frac, rel=1e-9)

    def test_closed_forms_by_r_range(self, t_eq):
        # piecewise closed forms of the superset-region area with the centroid:
        # (sqrt3/4) (2r-3)^2 / r^2 on (3/2, 2], and (sqrt3/4)(1 - 3/r^2) beyond
        for r in (1.55, 1.8, 2.0):
            rs = superset_region(ProximityMapSpec.pe(t_eq, r))
            assert rs.area() == pytest.approx(
                (SQRT3 / 4.0) * (2 * r - 3) ** 2 / r**2, rel=1e-9
            )
        for r in (2.0, 2.7, 5.0, 40.0):
            rs = superset_region(ProximityMapSpec.pe(t_eq, r))
            assert rs.area() == pytest.approx((SQRT3 / 4.0) * (1.0 - 3.0 / r**2), rel=1e-9)

    def test_membership_oracle_pe(self, t_eq):
        # every superset point's region is the whole triangle, and points just
        # outside are not (N(x) = T iff depth of x >= 1/r)
        spec = ProximityMapSpec.pe(t_eq, 2.0)
        rs = superset_region(spec)
        rng = np.random.default_rng(23)
        probe = sample_uniform_triangle(120, t_eq, rng)
        anchors = [Point2(*v) for v in t_eq.vertices]
        for p in sample_uniform_triangle(400, t_eq, rng):
            x = Point2(*p)
            if min(a for a in [rs.pieces[i].boundary_distance(x) for i in range(len(rs.pieces))]) < 1e-6:
                continue
            covers_all = all(contains(spec, x, Point2(*q)) for q in probe) and all(
                contains(spec, x, a) for a in anchors
            )
            assert covers_all == rs.contains(x)

    def test_cs_superset(self, t_eq):
        assert superset_region(ProximityMapSpec.cs(t_eq, 0.5)).kind == "empty"
        rs = superset_region(ProximityMapSpec.cs(t_eq, 1.0))
        assert rs.kind == "point"
        assert math.dist(rs.point, center(t_eq, "centroid")) < 1e-12

    def test_cs_membership_oracle(self, t_eq):
        # grid check: no point reaches full coverage at tau=0.5; M does at tau=1
        rng = np.random.default_rng(9)
        probe = [Point2(*p) for p in sample_uniform_triangle(150, t_eq, rng)] + [
            Point2(*v) for v in t_eq.vertices
        ]
        spec_half = ProximityMapSpec.cs(t_eq, 0.5)
        for p in sample_uniform_triangle(200, t_eq, rng):
            assert not all(contains(spec_half, Point2(*p), q) for q in probe)
        spec_one = ProximityMapSpec.cs(t_eq, 1.0)
        m = center(t_eq, "centroid")
        assert all(contains(spec_one, m, q) for q in probe)

    def test_arcslice_superset(self, t_eq):
        rs = superset_region(ProximityMapSpec.arc_slice(t_eq))
        assert rs.kind == "point"
        assert math.dist(rs.point, center(t_eq, "circumcenter")) < 1e-12
        obtuse = Triangle(Point2(0, 0), Point2(1, 0), Point2(0.5, 0.1))
        assert superset_region(ProximityMapSpec.arc_slice(obtuse)).kind == "empty"

    def test_spherical_superset_empty(self, t_eq):
        assert superset_region(ProximityMapSpec.spherical(t_eq.vertices)).kind == "empty"

    def test_interval_superset_midpoint(self):
        rs = superset_region(ProximityMapSpec.interval((0.0, 1.0)))
        assert rs.kind == "point"
        assert rs.point.x == pytest.approx(0.5)

    def test_core_interior_empty_boundary_point_custom_m(self, t_eq):
        r = 1.25
        core = core_triangle(t_eq, r)
        inside = core.vertices[0]
        centroid = center(t_eq, "centroid")
        m_in = Point2(
            0.5 * inside.x + 0.5 * centroid.x, 0.5 * inside.y + 0.5 * centroid.y
        )
        assert superset_region(ProximityMapSpec.pe(t_eq, r, m_in)).kind == "empty"
        m_bd = core.vertices[1]
        rs = superset_region(ProximityMapSpec.pe(t_eq, r, m_bd))
        assert rs.kind == "point"
        # outside the core: positive area
        m_out = Point2(0.06, 0.05)
        rs = superset_region(ProximityMapSpec.pe(t_eq, r, m_out))
        assert rs.kind == "polygon" and rs.area() > 0

    def test_core_interior_disjoint_from_superset(self):
        # interior of the core never meets the superset region, any M and r
        rng = np.random.default_rng(77)
        t = random_triangle(rng)
        for r in (1.2, 1.4):
            core = core_triangle(t, r)
            for _ in range(6):
                m = random_interior_point(t, rng)
                rs = superset_region(ProximityMapSpec.pe(t, r, m))
                if rs.kind != "polygon":
                    continue
                for w in np.linspace(0.1, 0.9, 5):
                    for i in range(3):
                        q = core.vertices[i]
                        z = Point2(
                            w * q.x + (1 - w) * sum(v.x for v in core.vertices) / 3,
                            w * q.y + (1 - w) * sum(v.y for v in core.vertices) / 3,
                        )
                        assert not rs.contains(z, -1e-9)

    def test_medial_triangle_inside_superset_for_r_ge_2(self):
        rng = np.random.default_rng(99)
        t = random_triangle(rng)
        med = medial_triangle(t)
        probes = [med.vertices[i] for i in range(3)]
        centroid_med = Point2(
            sum(p.x for p in probes) / 3.0, sum(p.y for p in probes) / 3.0
        )
        for r in (2.0, 2.5, 4.0):
            for m in ("centroid", "incenter", random_interior_point(t, rng)):
                rs = superset_region(ProximityMapSpec.pe(t, r, m))
                for z in [centroid_med] + [
                    Point2(0.8 * p.x + 0.2 * centroid_med.x, 0.8 * p.y + 0.2 * centroid_med.y)
                    for p in probes
                ]:
                    assert rs.contains(z, 1e-9)
