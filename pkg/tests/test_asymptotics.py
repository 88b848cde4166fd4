import json
import math

import numpy as np
import pytest

from jordan_geo.asymptotics import (
    ConeNeighborhood,
    basepoint_spot_check,
    build_family,
    cone_membership,
    default_cone,
    family_from_manifest,
    load_family,
    probe_cone_inside_disk,
    probe_disk_inside_cone,
    ray_family_coincidence,
    shared_tail,
)
from jordan_geo.errors import InvalidParameter
from jordan_geo.generators import spiral_entrance
from jordan_geo.geodesic import shortest_path
from jordan_geo.polygon import sample_points

from conftest import domain

KOCH_BASE = (0.5, math.sqrt(3) / 6)


@pytest.fixture(scope="module")
def koch_family():
    return build_family("koch_prefix", 4, KOCH_BASE)


def test_cone_requires_valid_parameters(sq):
    ray = shortest_path(sq.poly, sq.tri, (0.5, 0.5), (1, 1))
    with pytest.raises(InvalidParameter):
        ConeNeighborhood(ray.source, ray, 0.0, 0.1)
    with pytest.raises(InvalidParameter):
        ConeNeighborhood(ray.source, ray, ray.total_length, 0.1)
    with pytest.raises(InvalidParameter):
        ConeNeighborhood(ray.source, ray, 0.3, 0.0)


def test_membership_examples(sq, ell):
    ray = shortest_path(sq.poly, sq.tri, (0.5, 0.5), (1, 1))
    nb = ConeNeighborhood(ray.source, ray, 0.3, 0.1)
    for t in (0.01, 0.2, ray.total_length - 0.3):
        assert cone_membership(sq.poly, sq.tri, nb, ray.point_at(0.3 + t))
    assert not cone_membership(sq.poly, sq.tri, nb, (0.6, 0.6))  # d(p, x) <= C
    g = shortest_path(ell.poly, ell.tri, (1.9, 0.1), (0.1, 1.9))
    nb = ConeNeighborhood(g.source, g, g.cumulative_arclength[1], 0.05)
    assert nb.center == (1.0, 1.0)
    assert not cone_membership(ell.poly, ell.tri, nb, (0.1, 1.0))


def test_points_beyond_c_on_the_ray_are_members_for_any_epsilon(ell):
    g = shortest_path(ell.poly, ell.tri, (1.9, 0.1), (0.1, 1.9))
    for eps in (1e-9, 1e-3, 1.0):
        nb = ConeNeighborhood(g.source, g, 0.5, eps)
        for s in np.linspace(0.51, g.total_length, 7):
            assert cone_membership(ell.poly, ell.tri, nb, g.point_at(float(s)))


def test_membership_is_monotone_in_epsilon(ell):
    g = shortest_path(ell.poly, ell.tri, (1.9, 0.1), (0.1, 1.9))
    pts = sample_points(ell.poly, ell.tri, 150, np.random.default_rng(0))
    small = ConeNeighborhood(g.source, g, 1.0, 0.05)
    big = ConeNeighborhood(g.source, g, 1.0, 0.2)
    for x in pts:
        if cone_membership(ell.poly, ell.tri, small, x):
            assert cone_membership(ell.poly, ell.tri, big, x)


def test_shared_tail_examples(sq):
    sp = domain("spiral3")
    mouth, inner = spiral_entrance(3)
    p, q = mouth, (mouth[0] + 0.05, mouth[1] + 0.05)
    dpr = shortest_path(sp.poly, sp.tri, p, inner).total_length
    dqr = shortest_path(sp.poly, sp.tri, q, inner).total_length
    assert dpr + dqr > 4 * sp.poly.diameter
    tail = shared_tail(sp.poly, sp.tri, p, q, inner)
    assert tail.tail_length > 0
    assert tail.tail.target == inner
    # convex: tail is just r
    t = shared_tail(sq.poly, sq.tri, (0.1, 0.1), (0.9, 0.2), (0.5, 0.9))
    assert t.tail_length == 0.0 and t.tail.points == ((0.5, 0.9),)
    # p = q: the whole geodesic
    t = shared_tail(sq.poly, sq.tri, (0.1, 0.1), (0.1, 0.1), (0.5, 0.9))
    assert t.tail_length == pytest.approx(math.dist((0.1, 0.1), (0.5, 0.9)))


def test_shared_tail_shrinks_as_q_moves_away(ell):
    p, r = (1.8, 0.2), (0.2, 1.8)
    lengths = [shared_tail(ell.poly, ell.tri, p, (1.8, y), r).tail_length for y in (0.25, 0.4, 0.6, 0.8)]
    assert all(a >= b - 1e-12 for a, b in zip(lengths, lengths[1:]))


def test_disk_inside_cone_square(sq):
    ray = shortest_path(sq.poly, sq.tri, (0.5, 0.5), (1, 1))
    res = probe_disk_inside_cone(sq.poly, sq.tri, ConeNeighborhood(ray.source, ray, 0.3, 0.1))
    assert res.found and res.disk_radius > 0


def test_disk_inside_cone_inconclusive_for_tiny_epsilon(ell):
    g = shortest_path(ell.poly, ell.tri, (1.9, 0.1), (0.1, 1.9))
    nb = ConeNeighborhood(g.source, g, g.cumulative_arclength[1], 1e-12)
    res = probe_disk_inside_cone(ell.poly, ell.tri, nb, angles=16, radii=4, min_radius_rel=1e-3)
    assert not res.found
    assert res.to_json()["status"] == "inconclusive"


def test_cone_inside_disk_square(sq):
    res = probe_cone_inside_disk(sq.poly, sq.tri, (0.5, 0.5), (1, 1), 0.2)
    assert res.found
    L = math.dist((0.5, 0.5), (1, 1))
    assert res.C >= L - 0.1 - 1e-12 and res.epsilon <= 0.05


def test_cone_inside_huge_disk_is_immediate(sq):
    res = probe_cone_inside_disk(sq.poly, sq.tri, (0.5, 0.5), (1, 1), 10.0)
    assert res.found and len(res.trials) == 1


def test_koch_family(koch_family):
    assert len(koch_family) == 5
    assert [p.n for p in koch_family.levels] == [3, 12, 48, 192, 768]
    steps = koch_family.target_steps()
    assert all(b < a for a, b in zip(steps[1:], steps[2:]))
    for k in range(5):
        assert koch_family.targets[k] in koch_family.levels[k].vertex_index


@pytest.mark.parametrize("level", [2, 4])
def test_koch_probes(koch_family, level):
    poly, tri, q = koch_family.level(level)
    ray = koch_family.ray(level)
    a = probe_disk_inside_cone(poly, tri, default_cone(poly, ray))
    b = probe_cone_inside_disk(poly, tri, koch_family.basepoint, q, 0.1 * poly.diameter)
    assert a.found and b.found


def test_basepoint_spot_check(sq):
    rep = basepoint_spot_check(sq.poly, sq.tri, (1, 1), [(0.5, 0.5), (0.2, 0.7)])
    assert rep.ok and len(rep.witness) == 2


def test_ray_coincidence(koch_family):
    sp = domain("spiral3")
    mouth, inner = spiral_entrance(3)
    fam = build_family("spiral", 0, mouth, target=None)
    rep = ray_family_coincidence(fam, mouth, (mouth[0] + 0.05, mouth[1] + 0.05), 0)
    assert rep.ok
    assert rep.metrics["onset_1"] < 4 * sp.poly.diameter
    # p1 = p2 gives onset 0
    rep = ray_family_coincidence(fam, mouth, mouth, 0)
    assert rep.metrics["onset_1"] == 0.0 and rep.ok
    # convex level: rays only meet at the target
    rep = ray_family_coincidence(koch_family, (0.4, 0.3), (0.6, 0.3), 0)
    assert rep.ok
    assert rep.metrics["shared_length"] == 0.0
    assert rep.metrics["onset_1"] == pytest.approx(rep.metrics["ray_lengths"][0])


def test_manifest_loading(tmp_path):
    path = tmp_path / "fam.json"
    path.write_text(json.dumps({"generator": "koch_prefix", "levels": 2, "basepoint": list(KOCH_BASE),
                                "target_path": "deep-vertex-rule"}))
    fam = load_family(path)
    assert len(fam) == 3
    sq = family_from_manifest({"generator": "square", "levels": 0, "basepoint": [0.5, 0.5]})
    assert sq.targets == [(1.0, 1.0)]


@pytest.mark.parametrize(
    "manifest",
    [
        [],
        {"generator": "koch_prefix", "levels": 2},
        {"generator": "koch_prefix", "levels": "2", "basepoint": [0.5, 0.3]},
        {"generator": "koch_prefix", "levels": 2, "basepoint": [5, 5]},
        {"generator": "koch_prefix", "levels": 2, "basepoint": [0.5, 0.3], "target_path": "nearest"},
        {"generator": "pentagon", "levels": 1, "basepoint": [0.5, 0.3]},
        {"generator": "square", "levels": 0, "basepoint": [0.5, 0.5], "target": [0.5, 0.5]},
    ],
)
def test_bad_manifests(manifest):
    with pytest.raises(InvalidParameter):
        family_from_manifest(manifest)
