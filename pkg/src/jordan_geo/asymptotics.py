"""Rays toward boundary targets, shared tails and cone-neighbourhood probes.

A polygon has no points at infinite distance, so a "ray" here is the finite
geodesic from a basepoint to a tracked boundary vertex.  A refinement family
(e.g. Koch prefixes of growing level) pushes the tracked vertex ever deeper
into the boundary, standing in for an asymptote class.

The probes give one-sided evidence for the cone topology: a disk around the
target that fits inside a given cone neighbourhood, and a cone neighbourhood
that fits inside a given disk.  A probe that fails reports ``found=False``;
that is inconclusive, never a counterexample.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .cat0 import common_prefix
from .errors import InvalidParameter
from .generators import GENERATORS, koch_deep_vertex, koch_prefix
from .geodesic import GeodesicPath, shortest_path
from .geom import Point, as_point, dist, point_segment_distances
from .polygon import SimplePolygon, Triangulation, classify_point, sample_points, triangulate
from .report import Report

POLAR_ANGLES = 64
POLAR_RADII = 16


def deep_vertex(poly: SimplePolygon, tri: Triangulation, basepoint) -> Point:
    """Polygon vertex farthest from ``basepoint`` in the intrinsic metric.

    Ties (within 1e-12 relative) go to the lexicographically largest vertex.
    """
    best, best_d = None, -1.0
    for v in poly.vertices:
        d = shortest_path(poly, tri, basepoint, v).total_length
        if best is None or d > best_d * (1 + 1e-12) or (d >= best_d * (1 - 1e-12) and v > best):
            best, best_d = v, max(d, best_d)
    return best


@dataclass
class RefinementFamily:
    """Polygons of increasing refinement with one basepoint and tracked targets."""

    generator: str
    levels: list[SimplePolygon]
    basepoint: Point
    targets: list[Point]
    triangulations: list[Triangulation] = field(default_factory=list, repr=False)

    def __post_init__(self):
        if len(self.levels) != len(self.targets):
            raise InvalidParameter("need one target per level")
        if not self.triangulations:
            self.triangulations = [triangulate(p) for p in self.levels]
        for k, poly in enumerate(self.levels):
            if classify_point(poly.xy, self.basepoint, poly.boundary_tol) <= 0:
                raise InvalidParameter(f"basepoint is not interior to level {k}")

    def __len__(self) -> int:
        return len(self.levels)

    def level(self, k: int) -> tuple[SimplePolygon, Triangulation, Point]:
        if not 0 <= k < len(self.levels):
            raise InvalidParameter(f"level {k} outside 0..{len(self.levels) - 1}")
        return self.levels[k], self.triangulations[k], self.targets[k]

    def ray(self, k: int, basepoint=None) -> GeodesicPath:
        poly, tri, q = self.level(k)
        return shortest_path(poly, tri, self.basepoint if basepoint is None else basepoint, q)

    def target_distances(self) -> list[float]:
        """Intrinsic distance from the basepoint to the target, per level."""
        return [self.ray(k).total_length for k in range(len(self))]

    def target_steps(self) -> list[float]:
        """Euclidean gaps between consecutive targets."""
        return [dist(a, b) for a, b in zip(self.targets, self.targets[1:])]


def build_family(generator: str, levels: int, basepoint, target=None) -> RefinementFamily:
    """Family for a gallery generator.

    ``koch_prefix`` produces levels ``0..levels`` tracked by
    :func:`jordan_geo.generators.koch_deep_vertex`.  Other generators give a
    constant family (``levels + 1`` copies of the default domain) whose
    target is ``target`` or else the intrinsically farthest vertex.
    """
    if int(levels) != levels or levels < 0:
        raise InvalidParameter("levels must be an integer >= 0")
    if generator not in GENERATORS:
        raise InvalidParameter(f"unknown generator {generator!r}")
    p = as_point(basepoint)
    if generator == "koch_prefix" and target is None:
        polys = [koch_prefix(k) for k in range(int(levels) + 1)]
        return RefinementFamily(generator, polys, p, [koch_deep_vertex(k) for k in range(len(polys))])
    poly = GENERATORS[generator]()
    tri = triangulate(poly)
    if classify_point(poly.xy, p, poly.boundary_tol) <= 0:
        raise InvalidParameter("basepoint is not interior to the domain")
    if target is None:
        q = deep_vertex(poly, tri, p)
    else:
        q = as_point(target)
        if classify_point(poly.xy, q, poly.boundary_tol) != 0:
            raise InvalidParameter("target must lie on the boundary")
    n = int(levels) + 1
    return RefinementFamily(generator, [poly] * n, p, [q] * n, [tri] * n)


def family_from_manifest(data) -> RefinementFamily:
    """Build a family from ``{"generator", "levels", "basepoint", "target_path"}``.

    ``target_path`` must be ``"deep-vertex-rule"``; an explicit ``"target"``
    point may be given instead for non-Koch generators.
    """
    if not isinstance(data, dict):
        raise InvalidParameter("manifest must be a JSON object")
    try:
        gen = data["generator"]
        levels = data["levels"]
        base = data["basepoint"]
    except KeyError as exc:
        raise InvalidParameter(f"manifest is missing {exc.args[0]!r}") from None
    rule = data.get("target_path", "deep-vertex-rule")
    if rule != "deep-vertex-rule":
        raise InvalidParameter(f"unknown target_path {rule!r}")
    if not isinstance(gen, str) or isinstance(levels, bool) or not isinstance(levels, int):
        raise InvalidParameter("generator must be a string and levels an integer")
    if not (isinstance(base, (list, tuple)) and len(base) == 2 and all(isinstance(v, (int, float)) for v in base)):
        raise InvalidParameter("basepoint must be [x, y]")
    target = data.get("target")
    if target is not None and gen == "koch_prefix":
        raise InvalidParameter("koch_prefix families track their target by rule")
    return build_family(gen, levels, base, target)


def load_family(path) -> RefinementFamily:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidParameter(f"malformed manifest: {exc}") from exc
    return family_from_manifest(data)


@dataclass(frozen=True)
class ConeNeighborhood:
    """Points beyond distance ``C`` whose geodesic from the basepoint meets the ball ``B(ray(C), epsilon)``."""

    basepoint: Point
    ray: GeodesicPath
    C: float
    epsilon: float

    def __post_init__(self):
        if not 0.0 < self.C < self.ray.total_length:
            raise InvalidParameter("need 0 < C < ray length")
        if not self.epsilon > 0.0:
            raise InvalidParameter("epsilon must be positive")

    @property
    def center(self) -> Point:
        return self.ray.point_at(self.C)

    def contains_path(self, path: GeodesicPath) -> bool:
        return path.total_length > self.C and _polyline_distance(path, self.center) <= self.epsilon

    def to_json(self) -> dict:
        return {"basepoint": list(self.basepoint), "target": list(self.ray.target), "C": self.C,
                "epsilon": self.epsilon, "center": list(self.center)}


def _polyline_distance(path: GeodesicPath, x) -> float:
    if path.is_degenerate:
        return dist(path.points[0], x)
    pts = np.array(path.points, dtype=float)
    return float(point_segment_distances(x, pts[:-1], pts[1:]).min())


def cone_membership(poly: SimplePolygon, tri: Triangulation, nbhd: ConeNeighborhood, x) -> bool:
    return nbhd.contains_path(shortest_path(poly, tri, nbhd.basepoint, x))


@dataclass(frozen=True)
class SharedTail:
    tail: GeodesicPath
    tail_length: float

    def to_json(self) -> dict:
        return {"tail_length": self.tail_length, "tail": [list(v) for v in self.tail.points]}


def shared_tail(poly: SimplePolygon, tri: Triangulation, p, q, r) -> SharedTail:
    """Longest common final piece of the geodesics ``p -> r`` and ``q -> r``.

    The tail runs from the split point to ``r``.
    """
    rp = shortest_path(poly, tri, r, p)
    rq = shortest_path(poly, tri, r, q)
    s, _ = common_prefix(rp, rq, poly.boundary_tol)
    s = min(s, rp.total_length)
    tail = rp.subpath(0.0, s).reversed()
    return SharedTail(tail, tail.total_length)


def ray_family_coincidence(family: RefinementFamily, p1, p2, level: int, rel_tol: float = 1e-9) -> Report:
    """Where the rays from ``p1`` and ``p2`` to the level's target merge.

    The onset on each ray is its length before the shared final piece.  In
    the geodesic triangle ``p1 p2 q`` the core perimeter is at most ``4D``,
    which bounds the sum of the two onsets by ``4D + d(p1, p2)``.
    """
    poly, tri, q = family.level(level)
    p1, p2 = as_point(p1), as_point(p2)
    g1 = shortest_path(poly, tri, p1, q)
    g2 = shortest_path(poly, tri, p2, q)
    h1, h2 = g1.reversed(), g2.reversed()
    s, meet = common_prefix(h1, h2, poly.boundary_tol)
    onset1 = max(h1.total_length - s, 0.0)
    onset2 = max(h2.total_length - s, 0.0)
    d12 = shortest_path(poly, tri, p1, p2).total_length
    D = poly.diameter
    bound = 4.0 * D + d12
    slack = rel_tol * D
    ok = onset1 + onset2 <= bound + slack
    metrics = {
        "level": level,
        "diameter": D,
        "onset_1": onset1,
        "onset_2": onset2,
        "shared_length": s,
        "bound": bound,
        "distance_p1_p2": d12,
        "ray_lengths": [g1.total_length, g2.total_length],
    }
    return Report("ray_coincidence", ok, metrics, {"merge_point": list(meet)})


@dataclass
class ProbeResult:
    """Outcome of a topology probe; ``found=False`` means inconclusive."""

    probe: str
    found: bool
    disk_radius: float | None = None
    C: float | None = None
    epsilon: float | None = None
    samples: int = 0
    trials: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "probe": self.probe,
            "found": self.found,
            "status": "witness" if self.found else "inconclusive",
            "disk_radius": self.disk_radius,
            "C": self.C,
            "epsilon": self.epsilon,
            "samples": self.samples,
            "trials": self.trials,
        }


def _polar_grid(poly: SimplePolygon, center, radius: float, angles: int, radii: int) -> list[Point]:
    cx, cy = center
    out = []
    for i in range(1, radii + 1):
        r = radius * i / radii
        for j in range(angles):
            a = 2.0 * math.pi * j / angles
            x = Point(cx + r * math.cos(a), cy + r * math.sin(a))
            if classify_point(poly.xy, x, poly.boundary_tol) > 0:
                out.append(x)
    return out


class _PathCache:
    def __init__(self, poly, tri, p):
        self.poly, self.tri, self.p = poly, tri, p
        self.paths: dict[Point, GeodesicPath] = {}

    def __call__(self, x) -> GeodesicPath:
        g = self.paths.get(x)
        if g is None:
            g = self.paths[x] = shortest_path(self.poly, self.tri, self.p, x)
        return g


def probe_disk_inside_cone(
    poly: SimplePolygon,
    tri: Triangulation,
    nbhd: ConeNeighborhood,
    angles: int = POLAR_ANGLES,
    radii: int = POLAR_RADII,
    min_radius_rel: float = 1e-6,
    bisections: int = 8,
) -> ProbeResult:
    """Largest tested radius ``rho`` whose sampled disk about the target lies in ``nbhd``.

    Samples for a radius are a polar grid around the target clipped to the
    domain plus every polygon vertex within ``rho``.  Radii are halved from
    ``D`` until one passes, then refined by bisection.
    """
    q = nbhd.ray.target
    cache = _PathCache(poly, tri, nbhd.basepoint)
    vertices = np.array(poly.vertices, dtype=float)
    vdist = np.hypot(vertices[:, 0] - q[0], vertices[:, 1] - q[1])
    trials: list = []
    counted: set = set()

    def passes(rho: float) -> bool:
        pts = [q, *_polar_grid(poly, q, rho, angles, radii)]
        pts += [poly.vertices[k] for k in np.flatnonzero(vdist <= rho)]
        counted.update(pts)
        ok = all(nbhd.contains_path(cache(x)) for x in pts)
        trials.append({"radius": rho, "ok": ok})
        return ok

    hi = poly.diameter
    floor = min_radius_rel * poly.diameter
    lo = None
    while hi >= floor:
        if passes(hi):
            lo = hi
            break
        hi *= 0.5
    if lo is None:
        return ProbeResult("disk_in_cone", False, samples=len(counted), trials=trials)
    if lo < poly.diameter:
        top = 2.0 * lo
        for _ in range(bisections):
            mid = 0.5 * (lo + top)
            if passes(mid):
                lo = mid
            else:
                top = mid
    return ProbeResult("disk_in_cone", True, disk_radius=lo, C=nbhd.C, epsilon=nbhd.epsilon, samples=len(counted), trials=trials)


def probe_cone_inside_disk(
    poly: SimplePolygon,
    tri: Triangulation,
    p,
    q,
    disk_radius: float,
    angles: int = POLAR_ANGLES,
    radii: int = POLAR_RADII,
    domain_samples: int = 1024,
    shrink_steps: int = 12,
    seed: int = 0,
) -> ProbeResult:
    """Find ``(C, epsilon)`` whose sampled cone neighbourhood lies in the disk ``B(q, disk_radius)``.

    Start with ``ray(C)`` at arclength ``disk_radius / 2`` before ``q`` and
    ``epsilon = disk_radius / 4``; while a sampled member of the
    neighbourhood falls outside the disk, halve ``epsilon``.  Candidates are
    uniform domain samples, a polar grid around ``q`` reaching ``2 *
    disk_radius``, and all polygon vertices.
    """
    if not disk_radius > 0:
        raise InvalidParameter("disk_radius must be positive")
    p, q = as_point(p), as_point(q)
    ray = shortest_path(poly, tri, p, q)
    L = ray.total_length
    if L == 0.0:
        raise InvalidParameter("basepoint coincides with the target")
    C = L - 0.5 * disk_radius if L > 0.5 * disk_radius else 0.5 * L
    eps = 0.25 * disk_radius
    rng = np.random.default_rng(seed)
    cands = list(sample_points(poly, tri, domain_samples, rng))
    cands += _polar_grid(poly, q, 2.0 * disk_radius, angles, radii)
    cands += list(poly.vertices)
    cache = _PathCache(poly, tri, p)
    paths = [(x, cache(x)) for x in cands]
    trials: list = []
    for _ in range(shrink_steps + 1):
        nbhd = ConeNeighborhood(p, ray, C, eps)
        members = [x for x, g in paths if nbhd.contains_path(g)]
        worst = max((dist(x, q) for x in members), default=0.0)
        ok = worst <= disk_radius
        trials.append({"C": C, "epsilon": eps, "members": len(members), "max_distance_to_target": worst, "ok": ok})
        if ok:
            return ProbeResult("cone_in_disk", True, disk_radius=disk_radius, C=C, epsilon=eps, samples=len(paths), trials=trials)
        eps *= 0.5
    return ProbeResult("cone_in_disk", False, disk_radius=disk_radius, samples=len(paths), trials=trials)


def default_cone(poly: SimplePolygon, ray: GeodesicPath, C: float | None = None, epsilon: float | None = None) -> ConeNeighborhood:
    """Cone at mid-ray with ``epsilon = 0.05 D`` unless given."""
    C = 0.5 * ray.total_length if C is None else C
    eps = 0.05 * poly.diameter if epsilon is None else epsilon
    return ConeNeighborhood(ray.source, ray, C, eps)


def basepoint_spot_check(poly: SimplePolygon, tri: Triangulation, q, basepoints, disk_radius: float | None = None) -> Report:
    """Run both probes from each basepoint; ok when every probe finds a witness."""
    q = as_point(q)
    rad = 0.1 * poly.diameter if disk_radius is None else disk_radius
    rows = []
    for b in basepoints:
        ray = shortest_path(poly, tri, b, q)
        a = probe_disk_inside_cone(poly, tri, default_cone(poly, ray))
        c = probe_cone_inside_disk(poly, tri, b, q, rad)
        rows.append({"basepoint": list(as_point(b)), "disk_in_cone": a.disk_radius, "cone_in_disk": [c.C, c.epsilon] if c.found else None,
                     "found": a.found and c.found})
    return Report("basepoint_stability", all(r["found"] for r in rows), {"disk_radius": rad}, rows)
