import math

import numpy as np
import pytest

from jordan_geo.geom import (
    Segment,
    as_point,
    closest_point_on_segment,
    orient,
    orient_many,
    segments_intersect,
    segments_properly_intersect,
    signed_area,
    triangle_incenter,
    turning_angle,
)


@pytest.mark.parametrize(
    "a,b,c,expected",
    [((0, 0), (1, 0), (0, 1), 1), ((0, 0), (1, 0), (2, 0), 0), ((0, 0), (1, 0), (1, -1), -1)],
)
def test_orient_examples(a, b, c, expected):
    assert orient(a, b, c) == expected


def test_orient_is_antisymmetric():
    rng = np.random.default_rng(0)
    for _ in range(200):
        a, b, c = rng.normal(size=(3, 2))
        s = orient(a, b, c)
        assert orient(b, a, c) == -s
        assert orient(a, c, b) == -s
        assert orient(c, b, a) == -s


def test_orient_snaps_near_collinear_to_zero():
    # determinant ~1e-17 relative to coordinates of size 1
    assert orient((0.0, 0.0), (1.0, 1.0), (0.5, 0.5 + 1e-17)) == 0
    assert orient((0.0, 0.0), (1.0, 1.0), (0.5, 0.5 + 1e-6)) == 1


def test_orient_bound_scales_with_coordinates():
    big = 1e6
    assert orient((0, 0), (big, big), (big / 2, big / 2 + 1e-7)) == 0
    assert orient((0, 0), (big, big), (big / 2, big / 2 + 1.0)) == 1


def test_orient_many_matches_scalar():
    rng = np.random.default_rng(1)
    a, b, c = rng.normal(size=(3, 50, 2))
    got = orient_many(a, b, c)
    assert list(got) == [orient(x, y, z) for x, y, z in zip(a, b, c)]


@pytest.mark.parametrize(
    "s1,s2,expected",
    [
        (((0, 0), (1, 1)), ((0, 1), (1, 0)), True),
        (((0, 0), (1, 0)), ((1, 0), (2, 0)), False),
        (((0, 0), (1, 0)), ((0, 1), (1, 1)), False),
        (((0, 0), (2, 0)), ((1, 0), (1, 1)), False),
    ],
)
def test_proper_intersection_examples(s1, s2, expected):
    assert segments_properly_intersect(s1, s2) is expected
    assert segments_properly_intersect(s2, s1) is expected


def test_closed_intersection_counts_touching():
    assert segments_intersect(((0, 0), (1, 0)), ((1, 0), (2, 0)))
    assert segments_intersect(((0, 0), (2, 0)), ((1, 0), (1, 1)))
    assert not segments_intersect(((0, 0), (1, 0)), ((0, 1), (1, 1)))


@pytest.mark.parametrize(
    "u,v,expected",
    [((1, 0), (0, 1), math.pi / 2), ((1, 0), (1, 0), 0.0), ((1, 0), (0, -1), -math.pi / 2), ((1, 0), (-1, 0), math.pi)],
)
def test_turning_angle_examples(u, v, expected):
    assert turning_angle(u, v) == pytest.approx(expected, abs=1e-15)


def test_turning_angle_antisymmetric_and_zero_vector():
    assert turning_angle((2, 1), (-1, 3)) == pytest.approx(-turning_angle((-1, 3), (2, 1)))
    with pytest.raises(ValueError):
        turning_angle((0, 0), (1, 0))


def test_as_point_rejects_non_finite():
    with pytest.raises(ValueError):
        as_point((math.nan, 0))
    with pytest.raises(ValueError):
        as_point((0, math.inf))


def test_closest_point_and_incenter():
    c, t = closest_point_on_segment((0.5, 2.0), (0, 0), (1, 0))
    assert tuple(c) == (0.5, 0.0) and t == 0.5
    c, t = closest_point_on_segment((-3.0, 1.0), (0, 0), (1, 0))
    assert tuple(c) == (0.0, 0.0) and t == 0.0
    # 3-4-5 right triangle has inradius 1
    m = triangle_incenter((0, 0), (4, 0), (0, 3))
    assert m == pytest.approx((1.0, 1.0))


def test_signed_area_orientation():
    sq = [(0, 0), (1, 0), (1, 1), (0, 1)]
    assert signed_area(sq) == 1.0
    assert signed_area(sq[::-1]) == -1.0


def test_segment_type():
    s = Segment(as_point((0, 0)), as_point((1, 2)))
    assert s.a.x == 0 and s.b.y == 2
