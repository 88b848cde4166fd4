"""Geodesic triangles in a polygonal Jordan domain.

A geodesic triangle ``pqr`` splits into three tails (the common initial
pieces of the two sides leaving each vertex) and a core Jordan triangle
with corners at the bifurcation points.  The checks here measure, on
sampled triangles, the comparison-geometry facts expected of the domain's
intrinsic metric: thin triangles, locally convex core sides, a core
perimeter of at most four diameters, and a hyperbolicity constant of at
most ``sqrt(3) * D / 4``.

Sign conventions: the core loop is always traversed counter-clockwise
(interior on the left).  Turning angles are positive for left turns, so a
core side that bends around a reflex corner of the domain turns right and
contributes a negative total turn.  The interior angle at a corner is
``pi`` minus the turning angle there.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DegenerateTriangle
from .geodesic import GeodesicPath, concat, shortest_path
from .geom import Point, as_point, dist, signed_area, triangle_incenter, turning_angle
from .polygon import SimplePolygon, Triangulation, classify_point, convex_hull, sample_points, segment_in_closed_loop
from .report import Report

SQRT3 = math.sqrt(3.0)
SAME_DIRECTION = 1e-10


def common_prefix(g1: GeodesicPath, g2: GeodesicPath, tol: float) -> tuple[float, Point]:
    """Length and end point of the longest common initial piece of two paths.

    Both paths must start at the same point.  The walk follows the two
    polylines in lockstep while their directions agree, so a split in the
    middle of a segment of one path is found as well.
    """
    p1, p2 = g1.points, g2.points
    cum = g1.cumulative_arclength
    pos = p1[0]
    s = 0.0
    i = j = 1
    # arclength is read off g1 so a fully shared path gives exactly its length
    while i < len(p1) and j < len(p2):
        a, b = p1[i], p2[j]
        if a == b or dist(a, b) <= tol:
            s, pos = cum[i], a
            i += 1
            j += 1
            continue
        da, db = dist(pos, a), dist(pos, b)
        if da <= tol:
            i += 1
            continue
        if db <= tol:
            j += 1
            continue
        ang = turning_angle((a[0] - pos[0], a[1] - pos[1]), (b[0] - pos[0], b[1] - pos[1]))
        if abs(ang) > SAME_DIRECTION:
            break
        if da < db:
            s, pos = cum[i], a
            i += 1
        else:
            s, pos = cum[i - 1] + dist(p1[i - 1], b), b
            j += 1
    return s, pos


def _cut(path: GeodesicPath, s0: float, a: Point, s1: float, b: Point, tol: float) -> GeodesicPath:
    """Piece of ``path`` between arclengths ``s0`` and ``s1`` with exact end points."""
    cum = path.cumulative_arclength
    inner = [path.points[k] for k in range(len(cum)) if s0 + tol < cum[k] < s1 - tol]
    return GeodesicPath.from_points([a, *inner, b])


@dataclass(frozen=True)
class JordanTriangle:
    """Geodesic triangle ``pqr`` split into tails and a core.

    ``sides`` are the full geodesics ``(pq, qr, rp)``.  ``tails[k]`` runs
    from the k-th vertex to its bifurcation point.  The core sides are
    ``tau`` (p̄ to r̄), ``gamma`` (p̄ to q̄) and ``rho`` (q̄ to r̄).
    """

    outer_vertices: tuple[Point, Point, Point]
    sides: tuple[GeodesicPath, GeodesicPath, GeodesicPath]
    bifurcation_points: tuple[Point, Point, Point]
    tails: tuple[GeodesicPath, GeodesicPath, GeodesicPath]
    tau: GeodesicPath
    gamma: GeodesicPath
    rho: GeodesicPath
    core_perimeter: float
    degenerate: bool

    @property
    def core_sides(self) -> tuple[GeodesicPath, GeodesicPath, GeodesicPath]:
        return (self.tau, self.gamma, self.rho)

    @property
    def side_lengths(self) -> tuple[float, float, float]:
        return tuple(s.total_length for s in self.sides)

    def core_loop(self) -> list[tuple[str, GeodesicPath]]:
        """Core sides as a counter-clockwise loop of labelled oriented paths."""
        loop = [("gamma", self.gamma), ("rho", self.rho), ("tau", self.tau.reversed())]
        pts = self._loop_points(loop)
        if signed_area(pts) < 0:
            loop = [("tau", self.tau), ("rho", self.rho.reversed()), ("gamma", self.gamma.reversed())]
        return loop

    @staticmethod
    def _loop_points(loop) -> list[Point]:
        pts: list[Point] = []
        for _, path in loop:
            for p in path.points:
                if not pts or pts[-1] != p:
                    pts.append(p)
        if len(pts) > 1 and pts[0] == pts[-1]:
            pts.pop()
        return pts

    def core_polygon(self) -> np.ndarray:
        """Vertex array of the CCW core loop."""
        return np.array(self._loop_points(self.core_loop()), dtype=float)

    def reassembled_sides(self, poly: SimplePolygon | None = None) -> tuple[GeodesicPath, GeodesicPath, GeodesicPath]:
        """Each full side rebuilt as tail + core side + reversed tail."""
        tp, tq, tr = self.tails
        return (
            concat(tp, self.gamma, tq.reversed(), poly=poly),
            concat(tq, self.rho, tr.reversed(), poly=poly),
            concat(tr, self.tau.reversed(), tp.reversed(), poly=poly),
        )

    def to_json(self) -> dict:
        return {
            "vertices": [list(v) for v in self.outer_vertices],
            "side_lengths": list(self.side_lengths),
            "bifurcation_points": [list(v) for v in self.bifurcation_points],
            "tail_lengths": [t.total_length for t in self.tails],
            "core_side_lengths": {"tau": self.tau.total_length, "gamma": self.gamma.total_length, "rho": self.rho.total_length},
            "core_perimeter": self.core_perimeter,
            "degenerate": self.degenerate,
        }


def decompose_triangle(poly: SimplePolygon, tri: Triangulation, p, q, r) -> JordanTriangle:
    """Split the geodesic triangle ``pqr`` into tails and a core Jordan triangle."""
    tol = poly.boundary_tol
    pq = shortest_path(poly, tri, p, q)
    qr = shortest_path(poly, tri, q, r)
    rp = shortest_path(poly, tri, r, p)
    p, q, r = pq.source, qr.source, rp.source
    sp, pbar = common_prefix(pq, rp.reversed(), tol)
    sq, qbar = common_prefix(qr, pq.reversed(), tol)
    sr, rbar = common_prefix(rp, qr.reversed(), tol)
    Lpq, Lqr, Lrp = pq.total_length, qr.total_length, rp.total_length
    tails = (
        _cut(pq, 0.0, p, sp, pbar, tol),
        _cut(qr, 0.0, q, sq, qbar, tol),
        _cut(rp, 0.0, r, sr, rbar, tol),
    )
    degenerate = (
        sp + sq >= Lpq - tol
        or sq + sr >= Lqr - tol
        or sr + sp >= Lrp - tol
    )
    if degenerate:
        gamma = GeodesicPath((pbar,), (0.0,), 0.0)
        rho = GeodesicPath((qbar,), (0.0,), 0.0)
        tau = GeodesicPath((pbar,), (0.0,), 0.0)
        perimeter = 0.0
    else:
        gamma = _cut(pq, sp, pbar, Lpq - sq, qbar, tol)
        rho = _cut(qr, sq, qbar, Lqr - sr, rbar, tol)
        tau = _cut(rp, sr, rbar, Lrp - sp, pbar, tol).reversed()
        perimeter = gamma.total_length + rho.total_length + tau.total_length
    return JordanTriangle((p, q, r), (pq, qr, rp), (pbar, qbar, rbar), tails, tau, gamma, rho, perimeter, degenerate)


@dataclass(frozen=True)
class ComparisonTriangle:
    """Euclidean triangle with the side lengths ``(pq, qr, rp)``."""

    side_lengths: tuple[float, float, float]
    embedded_vertices: tuple[Point, Point, Point]
    degenerate_flag: bool

    def comparison_point(self, side_id: str, s: float) -> Point:
        """Point at distance ``s`` from the first named vertex of ``side_id``."""
        k = {"pq": 0, "qr": 1, "rp": 2}[side_id]
        a = self.embedded_vertices[k]
        b = self.embedded_vertices[(k + 1) % 3]
        length = self.side_lengths[k]
        if length == 0.0:
            return a
        t = min(max(s / length, 0.0), 1.0)
        return Point(a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))

    @property
    def area(self) -> float:
        return abs(signed_area(self.embedded_vertices))


def comparison_from_lengths(c: float, a: float, b: float) -> ComparisonTriangle:
    """Embed side lengths ``pq = c``, ``qr = a``, ``rp = b`` in the plane.

    The height of the third vertex comes from Kahan's cancellation-safe
    Heron formula, which keeps thin triangles accurate.
    """
    P = Point(0.0, 0.0)
    Q = Point(c, 0.0)
    x, y = _third_vertex(c, a, b)
    R = Point(x, y)
    scale = max(a, b, c)
    flag = scale == 0.0 or y <= 1e-12 * scale
    return ComparisonTriangle((c, a, b), (P, Q, R), flag)


def _third_vertex(c: float, a: float, b: float) -> tuple[float, float]:
    if c == 0.0:
        return b, 0.0
    # b - a is exact for close lengths, unlike b*b - a*a
    x = ((b - a) * (b + a) + c * c) / (2.0 * c)
    s1, s2, s3 = sorted((a, b, c), reverse=True)
    prod = (s1 + (s2 + s3)) * (s3 - (s1 - s2)) * (s3 + (s1 - s2)) * (s1 + (s2 - s3))
    area = 0.25 * math.sqrt(prod) if prod > 0.0 else 0.0
    return x, 2.0 * area / c


def comparison_triangle(t: JordanTriangle) -> ComparisonTriangle:
    """Comparison triangle of the full geodesic triangle ``t``."""
    c, a, b = t.side_lengths
    return comparison_from_lengths(c, a, b)


_SIDE_IDS = ("pq", "qr", "rp")


def check_thinness(
    poly: SimplePolygon,
    tri: Triangulation,
    t: JordanTriangle,
    samples_per_side: int = 12,
    densify: int = 0,
    rel_tol: float = 1e-7,
) -> Report:
    """Compare intrinsic and comparison distances over sampled side pairs.

    ``max_excess`` is the largest ``d(x, y) - d(x̄, ȳ)``; the triangle is
    thin when it does not exceed ``rel_tol * D``.  Pairs on a common side are
    exact (the side is a geodesic) and only cross-side pairs are measured.
    ``densify`` adds that many rounds of local refinement around the worst
    pair.
    """
    if samples_per_side < 2:
        raise ValueError("samples_per_side must be >= 2")
    cmp = comparison_triangle(t)
    sides = t.sides

    def excess(i, si, j, sj):
        x = sides[i].point_at(si)
        y = sides[j].point_at(sj)
        d = shortest_path(poly, tri, x, y).total_length
        return d - dist(cmp.comparison_point(_SIDE_IDS[i], si), cmp.comparison_point(_SIDE_IDS[j], sj))

    grids = [[s.total_length * k / (samples_per_side - 1) for k in range(samples_per_side)] for s in sides]
    worst = (-math.inf, None)
    pairs = 0
    for i in range(3):
        for j in range(i + 1, 3):
            for si in grids[i]:
                for sj in grids[j]:
                    e = excess(i, si, j, sj)
                    pairs += 1
                    if e > worst[0]:
                        worst = (e, (i, si, j, sj))
    for _ in range(densify):
        if worst[1] is None:
            break
        i, si, j, sj = worst[1]
        hi = sides[i].total_length / (samples_per_side - 1)
        hj = sides[j].total_length / (samples_per_side - 1)
        for di in np.linspace(-hi, hi, 5):
            for dj in np.linspace(-hj, hj, 5):
                a = min(max(si + di, 0.0), sides[i].total_length)
                b = min(max(sj + dj, 0.0), sides[j].total_length)
                e = excess(i, a, j, b)
                pairs += 1
                if e > worst[0]:
                    worst = (e, (i, a, j, b))
        samples_per_side *= 2
    max_excess = worst[0] if worst[1] is not None else 0.0
    tol = rel_tol * poly.diameter
    witness = None
    if worst[1] is not None:
        i, si, j, sj = worst[1]
        witness = {"side_x": _SIDE_IDS[i], "s_x": si, "side_y": _SIDE_IDS[j], "s_y": sj}
    return Report("thin", max_excess <= tol, {"max_excess": max_excess, "tolerance": tol, "pairs": pairs}, witness)


def _turns(path: GeodesicPath) -> list[float]:
    pts = path.points
    return [
        turning_angle((pts[k][0] - pts[k - 1][0], pts[k][1] - pts[k - 1][1]), (pts[k + 1][0] - pts[k][0], pts[k + 1][1] - pts[k][1]))
        for k in range(1, len(pts) - 1)
    ]


def check_side_convexity(t: JordanTriangle, tol: float = 1e-9) -> Report:
    """Turning of the core sides and the angle sum of the core.

    On the counter-clockwise core loop each side may only turn right (all
    interior turns <= 0, hence a nonpositive total), the three side totals
    add to at least ``-pi`` and the three corner angles add to at most
    ``2 pi``.
    """
    if t.degenerate:
        raise DegenerateTriangle("core of a degenerate triangle has no sides")
    loop = t.core_loop()
    per_side = {}
    consistent = True
    for name, path in loop:
        turns = _turns(path)
        per_side[name] = sum(turns)
        if turns and not (all(a <= tol for a in turns) or all(a >= -tol for a in turns)):
            consistent = False
    corners = []
    for k in range(3):
        _, inc = loop[k - 1]
        _, out = loop[k]
        a, b = inc.points[-2], inc.points[-1]
        c = out.points[1]
        turn = turning_angle((b[0] - a[0], b[1] - a[1]), (c[0] - b[0], c[1] - b[1]))
        corners.append(math.pi - turn)
    turn_sum = sum(per_side.values())
    angle_sum = sum(corners)
    sides_ok = all(v <= tol for v in per_side.values())
    sum_ok = turn_sum >= -math.pi - tol
    angle_ok = angle_sum <= 2.0 * math.pi + tol
    metrics = {
        "per_side_total_turn": per_side,
        "turn_sum": turn_sum,
        "corner_angles": corners,
        "angle_sum": angle_sum,
        "sign_consistent": consistent,
        "sum_bound_ok": sum_ok,
    }
    return Report("convexity", consistent and sides_ok and sum_ok and angle_ok, metrics)


def check_perimeter_bound(t: JordanTriangle, D: float, rel_tol: float = 1e-9) -> Report:
    bound = 4.0 * D
    ok = t.core_perimeter <= bound + rel_tol * D
    return Report("perimeter", ok, {"core_perimeter": t.core_perimeter, "bound_4D": bound})


@dataclass(frozen=True)
class IncenterWitness:
    m: Point
    segment_sums: tuple[float, float, float]
    core_lengths: tuple[float, float, float]
    ok: bool

    def to_json(self) -> dict:
        return {"m": list(self.m), "segment_sums": list(self.segment_sums), "core_lengths": list(self.core_lengths), "ok": self.ok}


def incenter_witness(poly: SimplePolygon, tri: Triangulation, t: JordanTriangle, grid: int = 24, rel_tol: float = 1e-9):
    """Find a point of the core seeing all three corners, or ``None``.

    Candidates are the incenter of the corner triangle, the vertex centroid
    of the core loop, then a grid over its bounding box ordered by distance
    to the incenter.  For a visible point ``m`` each core side is at most the
    sum of the straight segments from ``m`` to its two corners.  ``None``
    means the sampled search failed, which is inconclusive.
    """
    if t.degenerate:
        raise DegenerateTriangle("core of a degenerate triangle has no interior")
    loop = t.core_polygon()
    pb, qb, rb = t.bifurcation_points
    tol = poly.boundary_tol
    inc = triangle_incenter(pb, qb, rb)
    cands = [inc, Point(*loop.mean(axis=0))]
    lo, hi = loop.min(axis=0), loop.max(axis=0)
    xs = np.linspace(lo[0], hi[0], grid + 2)[1:-1]
    ys = np.linspace(lo[1], hi[1], grid + 2)[1:-1]
    g = [Point(float(x), float(y)) for x in xs for y in ys]
    g.sort(key=lambda c: (dist(c, inc), c))
    cands += g
    for m in cands:
        if classify_point(loop, m, tol) <= 0:
            continue
        if all(segment_in_closed_loop(loop, m, c, tol) for c in (pb, qb, rb)):
            mp, mq, mr = dist(m, pb), dist(m, qb), dist(m, rb)
            sums = (mp + mr, mp + mq, mq + mr)
            lengths = (t.tau.total_length, t.gamma.total_length, t.rho.total_length)
            slack = rel_tol * poly.diameter
            ok = all(L <= s + slack for L, s in zip(lengths, sums))
            return IncenterWitness(m, sums, lengths, ok)
    return None


@dataclass
class TriangleSampler:
    """Configuration for random geodesic triangles.

    Each vertex is a random polygon vertex with probability
    ``vertex_fraction`` and otherwise a uniform random point of the domain.
    """

    count: int = 10
    points_per_side: int = 16
    seed: int = 0
    vertex_fraction: float = 0.5
    triangles: list = field(default_factory=list)


def random_triangles(poly: SimplePolygon, tri: Triangulation, count: int, rng: np.random.Generator, vertex_fraction: float = 0.5) -> list[tuple[Point, Point, Point]]:
    out = []
    for _ in range(count):
        pts = []
        interior = sample_points(poly, tri, 3, rng)
        for k in range(3):
            if rng.random() < vertex_fraction:
                pts.append(poly.vertices[int(rng.integers(poly.n))])
            else:
                pts.append(interior[k])
        out.append(tuple(pts))
    return out


def extremal_triangle(poly: SimplePolygon) -> tuple[Point, Point, Point]:
    """Three hull vertices with the largest Euclidean perimeter.

    On a convex domain this is the natural candidate for the fattest
    geodesic triangle.  Hulls with more than 40 vertices are thinned evenly
    first to keep the cubic search small.
    """
    hull = convex_hull(poly.vertices)
    if len(hull) > 40:
        hull = [hull[round(k * len(hull) / 40)] for k in range(40)]
    if len(hull) < 3:
        raise DegenerateTriangle("polygon hull has fewer than three vertices")
    best, trip = -1.0, None
    for i in range(len(hull)):
        for j in range(i + 1, len(hull)):
            for k in range(j + 1, len(hull)):
                a, b, c = hull[i], hull[j], hull[k]
                per = dist(a, b) + dist(b, c) + dist(c, a)
                if per > best:
                    best, trip = per, (a, b, c)
    return trip


@dataclass
class DeltaEstimate:
    delta_lower: float
    bound: float
    samples: int
    witness_triangle: JordanTriangle | None
    witness_point: Point | None = None
    ok: bool = True

    def to_json(self) -> dict:
        return {
            "delta_lower": self.delta_lower,
            "bound": self.bound,
            "samples": self.samples,
            "ok": self.ok,
            "witness_point": list(self.witness_point) if self.witness_point else None,
            "witness_triangle": self.witness_triangle.to_json() if self.witness_triangle else None,
        }


class _SideDistance:
    """Intrinsic distance from points to one geodesic side."""

    def __init__(self, poly, tri, side: GeodesicPath, resolution: int):
        self.poly, self.tri, self.side = poly, tri, side
        L = side.total_length
        self.grid = [L * k / (resolution - 1) for k in range(resolution)] if L > 0 else [0.0]
        self.pts = [side.point_at(s) for s in self.grid]
        self.calls = 0

    def _d(self, x, s) -> float:
        self.calls += 1
        return shortest_path(self.poly, self.tri, x, self.side.point_at(s)).total_length

    def __call__(self, x, refine: bool = True) -> float:
        # intrinsic >= Euclidean distance, so scan in Euclidean order and stop early
        order = sorted(range(len(self.pts)), key=lambda k: dist(x, self.pts[k]))
        best, kbest = math.inf, 0
        for k in order:
            if dist(x, self.pts[k]) >= best:
                break
            d = self._d(x, self.grid[k])
            if d < best:
                best, kbest = d, k
        if refine and len(self.grid) > 1:
            # distance to a geodesic is convex along it, so a bracketed search is safe
            lo = self.grid[max(kbest - 1, 0)]
            hi = self.grid[min(kbest + 1, len(self.grid) - 1)]
            res = minimize_scalar(lambda s: self._d(x, s), bounds=(lo, hi), method="bounded",
                                  options={"xatol": 1e-10 * max(1.0, self.poly.diameter)})
            best = min(best, float(res.fun))
        return best


def triangle_delta(poly: SimplePolygon, tri: Triangulation, t: JordanTriangle, points_per_side: int, refine: bool = True):
    """Largest distance from a point of one side to the union of the other two.

    Returns ``(delta, point, queries)``.
    """
    sides = t.sides
    if t.degenerate:
        # a tripod: each side is the union of two legs shared with the others
        return 0.0, sides[0].source, 0
    dists = [_SideDistance(poly, tri, s, points_per_side) for s in sides]
    best, best_pt, best_loc = 0.0, sides[0].source, None

    def gap(i, s):
        x = sides[i].point_at(s)
        return min(dists[j](x, refine) for j in range(3) if j != i), x

    for i, side in enumerate(sides):
        L = side.total_length
        if L == 0.0:
            continue
        grid = [L * k / (points_per_side - 1) for k in range(points_per_side)]
        for k, s in enumerate(grid):
            g, x = gap(i, s)
            if g > best:
                best, best_pt, best_loc = g, x, (i, k, grid)
    if refine and best_loc is not None:
        i, k, grid = best_loc
        lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)]
        res = minimize_scalar(lambda s: -gap(i, s)[0], bounds=(lo, hi), method="bounded",
                              options={"xatol": 1e-10 * max(1.0, poly.diameter)})
        g, x = gap(i, float(res.x))
        if g > best:
            best, best_pt = g, x
    return best, best_pt, sum(d.calls for d in dists)


def estimate_delta(poly: SimplePolygon, tri: Triangulation, sampler: TriangleSampler | None = None, refine: bool = True, rel_tol: float = 1e-7) -> DeltaEstimate:
    """Lower estimate of the hyperbolicity constant from sampled triangles.

    ``sampler.triangles`` (explicit vertex triples) are used first, then
    ``sampler.count`` random triangles.  The estimate is certified against
    ``sqrt(3) * D / 4``.
    """
    sampler = sampler or TriangleSampler()
    rng = np.random.default_rng(sampler.seed)
    triples = [tuple(as_point(v) for v in t) for t in sampler.triangles]
    triples += random_triangles(poly, tri, sampler.count, rng, sampler.vertex_fraction)
    bound = SQRT3 * poly.diameter / 4.0
    best, best_t, best_pt = 0.0, None, None
    for p, q, r in triples:
        t = decompose_triangle(poly, tri, p, q, r)
        d, x, _ = triangle_delta(poly, tri, t, sampler.points_per_side, refine)
        if d > best or best_t is None:
            best, best_t, best_pt = d, t, x
    ok = best <= bound + rel_tol * poly.diameter
    return DeltaEstimate(best, bound, len(triples), best_t, best_pt, ok)


def check_distance_convexity(poly: SimplePolygon, tri: Triangulation, g1: GeodesicPath, g2: GeodesicPath, n: int = 33, rel_tol: float = 1e-7) -> Report:
    """Midpoint convexity of ``f(t) = d(g1(t L1), g2(t L2))`` on a uniform grid."""
    if n < 3:
        raise ValueError("n must be >= 3")
    L1, L2 = g1.total_length, g2.total_length
    ts = [k / (n - 1) for k in range(n)]
    f = [shortest_path(poly, tri, g1.point_at(t * L1), g2.point_at(t * L2)).total_length for t in ts]
    tol = rel_tol * poly.diameter
    worst, where = -math.inf, None
    for i in range(n):
        for j in range(i + 2, n, 2):
            m = (i + j) // 2
            gap = f[m] - 0.5 * (f[i] + f[j])
            if gap > worst:
                worst, where = gap, (i, j)
    ok = worst <= tol
    return Report("distance_convexity", ok, {"max_violation": worst, "tolerance": tol, "values": f}, {"pair": list(where)} if not ok else None)
