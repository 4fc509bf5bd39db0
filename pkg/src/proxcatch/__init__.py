"""Proximity catch digraphs: proximity maps on triangles, region calculus,
domination numbers, and a reproducible Monte Carlo harness."""

from .geom import (
    BasicTriangleParams,
    CENTROID,
    CIRCUMCENTER,
    INCENTER,
    ConvexPolygon,
    HalfPlane,
    Point2,
    SimilarityTransform,
    Triangle,
    center,
    equilateral_triangle,
    equilateral_area_scale,
    from_equilateral,
    signed_area,
    to_basic,
    to_equilateral,
)
from .regions import (
    RegionPartition,
    SupersetRegion,
    core_triangle,
    edge_regions,
    locate,
    medial_triangle,
    pe_core_triangle,
    superset_region,
    vertex_regions,
)
from .proximity import (
    ProximityMapSpec,
    ProximityRegion,
    arc_slice_region,
    contains,
    cs_region,
    disk_triangle_area,
    interval_region,
    pe_region,
    region,
    region_area,
    spherical_region,
)
from .gamma import (
    ActiveSetResult,
    EdgeExtrema,
    Gamma1Region,
    edge_extrema,
    eta_value,
    eta_value_interval,
    gamma1_area,
    gamma1_grid_area,
    gamma1_interval_1d,
    gamma1_point,
    gamma1_set,
    gamma1_via_extrema,
    gamma2_rectangles_1d,
    gamma_k_membership,
)
from .pcd import (
    DominationResult,
    PcdDigraph,
    arc_density,
    build_pcd,
    cs_gamma_n_construction,
    default_cs_epsilon,
    domination_number,
    interval_domination,
    kappa_upper_bound,
    pe_three_point_cover,
)
from .sim import (
    Estimate,
    SimConfig,
    chi_square_uniform_triangle,
    fit_rate,
    one_dim_harness,
    rng_for,
    run_config,
    sample_density_rejection,
    sample_uniform_triangle,
    write_csv,
)

__version__ = "0.1.0"
