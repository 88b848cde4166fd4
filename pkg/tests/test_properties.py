"""Randomized invariants driven by Hypothesis."""
import math

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from jordan_geo.cat0 import check_perimeter_bound, check_thinness, decompose_triangle
from jordan_geo.geodesic import shortest_path, validate_taut
from jordan_geo.oracle import oracle_path

from conftest import domain

NAMES = ["l_shape", "comb4", "spiral3", "random25"]
SETTINGS = settings(max_examples=40, deadline=None, derandomize=True, suppress_health_check=[HealthCheck.filter_too_much])
unit = st.floats(0.0, 1.0, allow_nan=False)


@st.composite
def inside(draw, name):
    # barycentric point in a random triangle of the triangulation
    d = domain(name)
    a, b, c = d.tri.triangles[draw(st.integers(0, len(d.tri.triangles) - 1))]
    u, v = draw(unit), draw(unit)
    if u + v > 1:
        u, v = 1 - u, 1 - v
    xy = d.poly.xy
    p = xy[a] + u * (xy[b] - xy[a]) + v * (xy[c] - xy[a])
    return (float(p[0]), float(p[1]))


def points(n):
    return st.sampled_from(NAMES).flatmap(lambda name: st.tuples(st.just(name), *[inside(name) for _ in range(n)]))


@SETTINGS
@given(points(2))
def test_funnel_equals_oracle(case):
    name, p, q = case
    d = domain(name)
    a = shortest_path(d.poly, d.tri, p, q)
    b = oracle_path(d.poly, p, q)
    assert a.points == b.points
    assert a.total_length == pytest.approx(b.total_length, rel=1e-9, abs=1e-15)


@SETTINGS
@given(points(2))
def test_geodesic_is_taut_and_symmetric(case):
    name, p, q = case
    d = domain(name)
    g = shortest_path(d.poly, d.tri, p, q)
    assert validate_taut(d.poly, g).ok
    h = shortest_path(d.poly, d.tri, q, p)
    assert h.total_length == pytest.approx(g.total_length, rel=1e-12, abs=1e-15)
    assert g.total_length >= math.dist(p, q) - 1e-12


@SETTINGS
@given(points(3))
def test_triangles_are_thin_with_short_cores(case):
    name, p, q, r = case
    d = domain(name)
    t = decompose_triangle(d.poly, d.tri, p, q, r)
    assert check_perimeter_bound(t, d.poly.diameter).ok
    assert check_thinness(d.poly, d.tri, t, samples_per_side=5).ok
