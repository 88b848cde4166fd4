import json
import math

import numpy as np
import pytest

from jordan_geo.errors import DegenerateInput, SimplicityViolation
from jordan_geo.generators import koch_prefix
from jordan_geo.polygon import (
    convex_hull,
    diameter,
    diameter_brute_force,
    is_chord,
    load_polygon,
    polygon_from_json,
    sample_points,
    save_polygon,
    triangle_areas,
    triangulate,
    validate,
)

from conftest import GALLERY, domain


def test_unit_square_diameter():
    poly = validate([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert poly.n == 4
    assert poly.diameter == pytest.approx(math.sqrt(2), rel=1e-15)
    assert poly.area == 1.0


def test_bowtie_names_edge_pair():
    with pytest.raises(SimplicityViolation) as exc:
        validate([(0, 0), (1, 1), (1, 0), (0, 1)])
    assert sorted(exc.value.edges) == [0, 2]


def test_l_shape_diameter():
    poly = validate([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])
    assert poly.diameter == pytest.approx(2 * math.sqrt(2), rel=1e-15)
    assert sum(poly.reflex) == 1
    assert poly.reflex[3]


def test_clockwise_input_is_reversed():
    poly = validate([(0, 1), (1, 1), (1, 0), (0, 0)])
    assert poly.area > 0
    assert set(poly.vertices) == {(0, 0), (1, 0), (1, 1), (0, 1)}


def test_normalization_drops_duplicates_and_collinear():
    poly = validate([(0, 0), (0.5, 0), (1, 0), (1, 0), (1, 1), (0, 1), (0, 0)])
    assert poly.n == 4
    kept = validate([(0, 0), (0.5, 0), (1, 0), (1, 1), (0, 1)], keep_collinear=True)
    assert kept.n == 5


def test_validate_is_idempotent(any_domain):
    p = any_domain.poly
    again = validate(p.vertices, keep_collinear=p.keep_collinear)
    assert again.vertices == p.vertices


@pytest.mark.parametrize(
    "raw,err",
    [
        ([(0, 0), (1, 0)], DegenerateInput),
        ([(0, 0), (1, 0), (2, 0)], DegenerateInput),
        ([(0, 0), (1, 0), (0, 0), (1, 0)], DegenerateInput),
        ([(0, 0), (2, 0), (2, 2), (1, -1), (0, 2)], SimplicityViolation),
        ([(0, 0), (2, 0), (1, 0), (1, 1)], SimplicityViolation),
    ],
)
def test_invalid_loops(raw, err):
    with pytest.raises(err):
        validate(raw)


def test_touching_vertex_is_not_simple():
    # a vertex lying on a non-adjacent edge
    with pytest.raises(SimplicityViolation):
        validate([(0, 0), (4, 0), (4, 4), (2, 0.0), (0, 4)])


@pytest.mark.parametrize("name", GALLERY)
def test_calipers_match_brute_force(name):
    p = domain(name).poly
    assert diameter(p.vertices) == diameter_brute_force(p.vertices)


def test_calipers_on_random_clouds():
    rng = np.random.default_rng(7)
    for _ in range(50):
        pts = [tuple(v) for v in rng.normal(size=(int(rng.integers(3, 40)), 2))]
        assert diameter(pts) == diameter_brute_force(pts)


def test_hull_is_ccw_without_collinear_points():
    hull = convex_hull([(0, 0), (1, 0), (2, 0), (2, 2), (0, 2), (1, 1)])
    assert hull == [(0, 0), (2, 0), (2, 2), (0, 2)]


@pytest.mark.parametrize("name", GALLERY)
def test_triangulation_partitions(name):
    d = domain(name)
    tri = d.tri
    assert len(tri.triangles) == d.poly.n - 2
    assert tri.is_tree()
    assert triangle_areas(d.poly, tri).sum() == pytest.approx(d.poly.area, rel=1e-9)


def test_triangulation_counts_from_examples():
    assert len(triangulate(validate([(0, 0), (2, 0), (3, 2), (0, 1)])).triangles) == 2
    assert len(triangulate(domain("l_shape").poly).triangles) == 4
    k2 = koch_prefix(2)
    t = triangulate(k2)
    assert len(t.triangles) == k2.n - 2 and t.is_tree()


def test_triangles_are_ccw_and_diagonals_inside(any_domain):
    xy = any_domain.poly.xy
    for a, b, c in any_domain.tri.triangles:
        u, v = xy[b] - xy[a], xy[c] - xy[a]
        assert u[0] * v[1] - u[1] * v[0] > 0


@pytest.mark.parametrize(
    "seg,expected",
    [(((1, 0), (1, 1)), True), (((0, 0), (1, 1)), True), (((0, 0), (2, 0)), False), (((2, 0), (0, 2)), False)],
)
def test_is_chord_l_shape(seg, expected, ell):
    assert is_chord(ell.poly, seg) is expected


def test_is_chord_square(sq):
    assert is_chord(sq.poly, ((0, 0), (1, 1)))
    assert not is_chord(sq.poly, ((0, 0), (0.5, 0)))
    assert not is_chord(sq.poly, ((0.2, 0.2), (1, 1)))


def test_classify_and_snap(ell):
    p = ell.poly
    assert p.classify((0.5, 0.5)) == 1
    assert p.classify((1.5, 1.5)) == -1
    assert p.classify((1.0, 1.5)) == 0
    assert p.snap((0.5, 0.5)) == (0.5, 0.5)
    assert p.snap((2.0 + 1e-12, 0.5)) == (2.0, 0.5)


def test_samples_lie_inside(any_domain):
    pts = sample_points(any_domain.poly, any_domain.tri, 200, np.random.default_rng(0))
    assert all(any_domain.poly.contains(x) for x in pts)


def test_json_round_trip(tmp_path, ell):
    path = tmp_path / "l.json"
    save_polygon(ell.poly, path)
    assert load_polygon(path).vertices == ell.poly.vertices
    with pytest.raises(ValueError):
        polygon_from_json({"verts": []})
    with pytest.raises(ValueError):
        polygon_from_json(json.loads('{"vertices": [[0, 0], [1, "a"], [0, 1]]}'))
