"""Intrinsic geodesics in simple polygons.

The polygon is treated as a Jordan domain with its intrinsic (path-length)
metric.  Modules:

* :mod:`~jordan_geo.geom` and :mod:`~jordan_geo.polygon`: predicates,
  validation, triangulation, diameter;
* :mod:`~jordan_geo.geodesic`: funnel shortest paths, tautness, chords;
* :mod:`~jordan_geo.oracle`: visibility-graph cross-check;
* :mod:`~jordan_geo.cat0`: geodesic triangles and their checks;
* :mod:`~jordan_geo.asymptotics`: rays, shared tails, cone probes;
* :mod:`~jordan_geo.generators`, :mod:`~jordan_geo.svg`, :mod:`~jordan_geo.cli`.
"""
from .asymptotics import (
    ConeNeighborhood,
    ProbeResult,
    RefinementFamily,
    build_family,
    cone_membership,
    default_cone,
    family_from_manifest,
    probe_cone_inside_disk,
    probe_disk_inside_cone,
    ray_family_coincidence,
    shared_tail,
)
from .cat0 import (
    ComparisonTriangle,
    DeltaEstimate,
    JordanTriangle,
    TriangleSampler,
    check_distance_convexity,
    check_perimeter_bound,
    check_side_convexity,
    check_thinness,
    comparison_triangle,
    decompose_triangle,
    estimate_delta,
    extremal_triangle,
    incenter_witness,
)
from .errors import (
    ArclengthOutOfRange,
    DegenerateInput,
    DegenerateTriangle,
    InternalError,
    InvalidChord,
    InvalidParameter,
    JordanGeoError,
    PointOutsideDomain,
    SimplicityViolation,
)
from .generators import comb, equilateral, generate, koch_prefix, l_shape, random_simple, spiral, square
from .geodesic import (
    GeodesicPath,
    check_separation,
    find_separating_chord,
    point_at_arclength,
    separates,
    shortest_path,
    side_of_chord,
    validate_taut,
)
from .geom import Point, Segment, orient
from .oracle import build_visibility, oracle_path, oracle_shortest_path
from .polygon import SimplePolygon, Triangulation, diameter, triangulate, validate
from .report import Report
from .svg import render_svg

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
