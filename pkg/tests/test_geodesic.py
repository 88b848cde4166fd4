import math

import numpy as np
import pytest

from jordan_geo.errors import ArclengthOutOfRange, InvalidChord, PointOutsideDomain
from jordan_geo.geodesic import (
    GeodesicPath,
    candidate_chords,
    chord_components,
    check_separation,
    concat,
    find_separating_chord,
    point_at_arclength,
    separates,
    shortest_path,
    side_of_chord,
    validate_taut,
)
from jordan_geo.polygon import sample_points

from conftest import GALLERY, domain

SQRT2 = math.sqrt(2)


def test_square_straight(sq):
    g = shortest_path(sq.poly, sq.tri, (0.1, 0.1), (0.9, 0.9))
    assert g.points == ((0.1, 0.1), (0.9, 0.9))
    assert g.total_length == pytest.approx(0.8 * SQRT2, rel=1e-15)


def test_l_shape_bends_at_reflex_corner(ell):
    g = shortest_path(ell.poly, ell.tri, (1.5, 0.5), (0.5, 1.5))
    assert g.points == ((1.5, 0.5), (1.0, 1.0), (0.5, 1.5))
    assert g.total_length == pytest.approx(SQRT2, rel=1e-15)


def test_identical_endpoints(any_domain):
    v = any_domain.poly.vertices[0]
    g = shortest_path(any_domain.poly, any_domain.tri, v, v)
    assert g.is_degenerate and g.total_length == 0.0


def test_outside_point_raises(ell):
    with pytest.raises(PointOutsideDomain):
        shortest_path(ell.poly, ell.tri, (0.5, 0.5), (1.5, 1.5))


def test_points_on_a_diagonal_are_joined_straight(ell):
    # both points sit on the diagonal (1,1)-(0,2) of the triangulation
    g = shortest_path(ell.poly, ell.tri, (0.49, 1.51), (0.2, 1.8))
    assert len(g.points) == 2


def test_boundary_and_vertex_endpoints(ell):
    g = shortest_path(ell.poly, ell.tri, (2, 0), (0, 2))
    assert g.points == ((2, 0), (1, 1), (0, 2))
    g = shortest_path(ell.poly, ell.tri, (2, 0.5), (0.5, 2))
    assert g.points == ((2, 0.5), (1, 1), (0.5, 2))


def test_point_at_arclength_examples(ell):
    straight = GeodesicPath.from_points([(0, 0), (2, 0)])
    assert point_at_arclength(straight, 1.0) == (1.0, 0.0)
    g = shortest_path(ell.poly, ell.tri, (1.5, 0.5), (0.5, 1.5))
    assert g.point_at(math.sqrt(0.5)) == (1.0, 1.0)
    assert g.point_at(0.0) == g.source
    assert g.point_at(g.total_length) == g.target
    with pytest.raises(ArclengthOutOfRange):
        g.point_at(-0.1)
    with pytest.raises(ArclengthOutOfRange):
        g.point_at(g.total_length + 1e-6)


def test_subpath_and_concat(ell):
    g = shortest_path(ell.poly, ell.tri, (1.5, 0.5), (0.5, 1.5))
    a, b = g.subpath(0, 0.3), g.subpath(0.3, g.total_length)
    j = concat(a, b, poly=ell.poly)
    assert j.points == g.points
    assert j.total_length == pytest.approx(g.total_length, rel=1e-15)
    with pytest.raises(ValueError):
        g.subpath(1.0, 0.5)


def test_symmetry_and_lower_bound(any_domain):
    rng = np.random.default_rng(11)
    pts = sample_points(any_domain.poly, any_domain.tri, 40, rng)
    for p, q in zip(pts[::2], pts[1::2]):
        g = shortest_path(any_domain.poly, any_domain.tri, p, q)
        h = shortest_path(any_domain.poly, any_domain.tri, q, p)
        assert h.points == g.points[::-1]
        assert h.total_length == pytest.approx(g.total_length, rel=1e-12)
        e = math.dist(p, q)
        assert g.total_length >= e * (1 - 1e-15)
        if len(g.points) > 2:
            assert g.total_length > e


def test_triangle_inequality(any_domain):
    rng = np.random.default_rng(12)
    pts = sample_points(any_domain.poly, any_domain.tri, 30, rng)
    P, T = any_domain.poly, any_domain.tri
    for p, q, r in zip(pts[::3], pts[1::3], pts[2::3]):
        d = lambda a, b: shortest_path(P, T, a, b).total_length  # noqa: E731
        assert d(p, r) <= (d(p, q) + d(q, r)) * (1 + 1e-9)


def test_paths_are_taut(any_domain):
    rng = np.random.default_rng(13)
    pts = sample_points(any_domain.poly, any_domain.tri, 40, rng) + list(any_domain.poly.vertices[:10])
    for p, q in zip(pts[::2], pts[1::2]):
        g = shortest_path(any_domain.poly, any_domain.tri, p, q)
        assert validate_taut(any_domain.poly, g).ok


def test_taut_rejects_bad_bends(ell, sq):
    bent = GeodesicPath.from_points([(1.5, 0.5), (1.2, 1.2), (0.5, 1.5)])
    r = validate_taut(ell.poly, bent)
    assert not r.ok
    assert r.violations[0]["point"] == [1.2, 1.2]
    assert validate_taut(sq.poly, GeodesicPath.from_points([(0.1, 0.1), (0.9, 0.9)])).ok
    # bending at a convex corner
    r = validate_taut(ell.poly, GeodesicPath.from_points([(1.5, 0.5), (2, 0), (0.5, 0.5)]))
    assert not r.ok and r.violations[0]["reason"] == "bend at a convex vertex"
    # wrapping the reflex corner the wrong way: slack around (1,1)
    r = validate_taut(ell.poly, GeodesicPath.from_points([(1.5, 0.5), (1, 1), (0.5, 0.5)]))
    assert not r.ok


@pytest.mark.parametrize("x,expected", [((1.5, 0.5), "A"), ((0.5, 0.5), "B"), ((1.0, 0.5), "ON"), ((0.5, 1.5), "B")])
def test_side_of_chord(x, expected, ell):
    assert side_of_chord(ell.poly, ((1, 0), (1, 1)), x) == expected


def test_side_of_chord_rejects_non_chords(ell):
    with pytest.raises(InvalidChord):
        side_of_chord(ell.poly, ((0, 0), (2, 0)), (0.5, 0.5))


def test_chord_components_cover_polygon(ell):
    a, b = chord_components(ell.poly, ((1, 0), (1, 1)))
    area = lambda xy: 0.5 * float(np.sum(xy[:, 0] * np.roll(xy[:, 1], -1) - np.roll(xy[:, 0], -1) * xy[:, 1]))  # noqa: E731
    assert area(a) == pytest.approx(1.0)
    assert area(b) == pytest.approx(2.0)


def test_separation_examples(ell):
    g = shortest_path(ell.poly, ell.tri, (1.5, 0.5), (0.5, 1.5))
    assert check_separation(ell.poly, g, [((1, 0), (1, 1))]).ok
    assert separates(ell.poly, ((1, 0), (1, 1)), (1.5, 0.5), (0.2, 1.8), (0.2, 0.2))
    w = find_separating_chord(ell.poly, (1.5, 0.5), (0.2, 1.8), (0.2, 0.2))
    assert w is not None
    assert separates(ell.poly, w, (1.5, 0.5), (0.2, 1.8), (0.2, 0.2))


def test_witness_search_is_inconclusive_on_the_geodesic(ell):
    g = shortest_path(ell.poly, ell.tri, (0.2, 1.8), (0.2, 0.2))
    assert find_separating_chord(ell.poly, g.point_at(0.5 * g.total_length), g.source, g.target) is None


def test_corrupted_path_is_separated(ell):
    # a detour into the right pocket is cut off by the chord (1,0)-(1,1)
    bad = GeodesicPath.from_points([(0.2, 1.8), (1.5, 0.5), (0.2, 0.2)])
    r = check_separation(ell.poly, bad, [((1, 0), (1, 1))])
    assert not r.ok


@pytest.mark.parametrize("name", GALLERY)
def test_no_sampled_chord_separates_geodesic_points(name):
    d = domain(name)
    chords = candidate_chords(d.poly, cap=60)
    rng = np.random.default_rng(5)
    pts = sample_points(d.poly, d.tri, 8, rng)
    for p, q in zip(pts[::2], pts[1::2]):
        g = shortest_path(d.poly, d.tri, p, q)
        assert check_separation(d.poly, g, chords, samples=16).ok


def test_candidate_chords_are_chords(ell):
    from jordan_geo.polygon import is_chord

    cs = candidate_chords(ell.poly)
    assert cs and all(is_chord(ell.poly, c) for c in cs)
    assert len(candidate_chords(domain("koch3").poly, cap=25)) <= 25


def test_endpoint_a_hair_from_a_reflex_vertex():
    d = domain("random25")
    p, r = (0.2678333902915885, 0.9297746953080669), (0.8716352741876565, 0.5439414007634977)
    fwd = shortest_path(d.poly, d.tri, p, r)
    back = shortest_path(d.poly, d.tri, r, p)
    assert back.points == fwd.reversed().points
    assert validate_taut(d.poly, fwd).ok


def test_tiny_path_does_not_graze_a_distant_corner():
    d = domain("comb4")
    g = shortest_path(d.poly, d.tri, (1.0000008, 0.9999999), (0.9999999, 1.0))
    assert len(g.points) == 2 and validate_taut(d.poly, g).ok


def test_point_just_above_a_diagonal():
    d = domain("comb4")
    g = shortest_path(d.poly, d.tri, (7.499999999999, 1.000000000003), (0.0, 1.0))
    assert g.total_length == pytest.approx(7.499999999999, rel=1e-12)
