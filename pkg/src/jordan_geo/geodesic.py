"""Intrinsic shortest paths in a simple polygon.

Point-to-point geodesics are computed with the funnel (taut string)
algorithm over the sleeve of triangles that joins the two endpoints in the
dual tree of a triangulation.  The module also carries validators for the
local and global characterizations of geodesics: taut bending at reflex
corners, and separation by chords.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

import numpy as np

from .errors import ArclengthOutOfRange, InvalidChord
from .geom import Point, as_point, closest_point_on_segment, dist, orient, orient_many, turning_angle
from .polygon import SimplePolygon, Triangulation, classify_point, is_chord
from .report import Report

ZERO_TURN = 1e-10
SHORT_SEGMENT = 1e-14
NEAR_VERTEX = 1e-12


@dataclass(frozen=True)
class GeodesicPath:
    points: tuple[Point, ...]
    cumulative_arclength: tuple[float, ...]
    total_length: float

    @classmethod
    def from_points(cls, points) -> "GeodesicPath":
        pts = [Point(float(p[0]), float(p[1])) for p in points]
        out = [pts[0]]
        for p in pts[1:]:
            if p != out[-1]:
                out.append(p)
        cum = [0.0]
        for a, b in zip(out, out[1:]):
            cum.append(cum[-1] + dist(a, b))
        return cls(tuple(out), tuple(cum), cum[-1])

    @property
    def source(self) -> Point:
        return self.points[0]

    @property
    def target(self) -> Point:
        return self.points[-1]

    @property
    def is_degenerate(self) -> bool:
        return len(self.points) == 1

    def reversed(self) -> "GeodesicPath":
        return GeodesicPath.from_points(self.points[::-1])

    def point_at(self, s: float) -> Point:
        return point_at_arclength(self, s)

    def sample(self, count: int) -> list[Point]:
        """``count`` points at uniform arclength, both ends included."""
        if count == 1 or self.total_length == 0.0:
            return [self.points[0]] * count
        return [self.point_at(self.total_length * k / (count - 1)) for k in range(count)]

    def distance_to(self, x) -> float:
        """Euclidean distance from ``x`` to the polyline."""
        if self.is_degenerate:
            return dist(x, self.points[0])
        return min(dist(x, closest_point_on_segment(x, a, b)[0]) for a, b in zip(self.points, self.points[1:]))

    def subpath(self, s0: float, s1: float) -> "GeodesicPath":
        """The piece between arclengths ``s0 <= s1``."""
        if s1 < s0:
            raise ValueError("subpath needs s0 <= s1")
        a = self.point_at(s0)
        b = self.point_at(s1)
        cum = self.cumulative_arclength
        inner = [self.points[k] for k in range(len(self.points)) if s0 < cum[k] < s1]
        return GeodesicPath.from_points([a, *inner, b])


def point_at_arclength(path: GeodesicPath, s: float) -> Point:
    """Point at arclength ``s`` from the source, by linear interpolation."""
    total = path.total_length
    slack = 1e-12 * max(1.0, total)
    if not (-slack <= s <= total + slack):
        raise ArclengthOutOfRange(f"s={s} outside [0, {total}]")
    s = min(max(s, 0.0), total)
    cum = path.cumulative_arclength
    k = bisect.bisect_left(cum, s)
    if k < len(cum) and cum[k] == s:
        return path.points[k]
    k -= 1
    a, b = path.points[k], path.points[k + 1]
    t = (s - cum[k]) / (cum[k + 1] - cum[k])
    return Point(a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def concat(*paths: GeodesicPath, poly: SimplePolygon | None = None) -> GeodesicPath:
    """Join paths end to start.

    With ``poly`` the result is put in canonical form, so straight-through
    junctions that are not grazed reflex corners disappear.
    """
    pts: list[Point] = []
    for path in paths:
        for p in path.points:
            if not pts or pts[-1] != p:
                pts.append(p)
    if poly is not None:
        pts = canonical_points(poly, pts)
    return GeodesicPath.from_points(pts)


def merge_straight(points, tol: float = ZERO_TURN, short: float | None = None) -> list[Point]:
    """Drop interior vertices with turning angle below ``tol`` radians.

    Vertices on a segment no longer than ``short`` go too (default: a
    relative 1e-14 of the largest coordinate).
    """
    pts = []
    for p in points:
        if not pts or pts[-1] != p:
            pts.append(p)
    if len(pts) < 3:
        return pts
    # a segment this short carries no direction; its vertex is rounding noise
    if short is None:
        short = SHORT_SEGMENT * max(max(abs(p[0]), abs(p[1])) for p in pts)
    out = [pts[0]]
    for i in range(1, len(pts) - 1):
        a, b, c = out[-1], pts[i], pts[i + 1]
        if dist(a, b) <= short or dist(b, c) <= short:
            continue
        if abs(turning_angle((b[0] - a[0], b[1] - a[1]), (c[0] - b[0], c[1] - b[1]))) <= tol:
            continue
        out.append(b)
    out.append(pts[-1])
    return out


def canonical_points(poly: SimplePolygon, points) -> list[Point]:
    """Canonical vertex list of a taut polyline in ``poly``.

    Straight-through vertices are merged, then every reflex polygon vertex
    touched by the open part of a segment is inserted.  A grazed reflex
    corner is where the path meets the boundary, so it is kept as a
    (zero-turn) vertex; this makes funnel and oracle output comparable
    vertex for vertex.
    """
    pts = merge_straight(points, short=SHORT_SEGMENT * poly.diameter)
    if len(pts) < 2:
        return pts
    rx = _reflex_xy(poly)
    if rx.shape[0] == 0:
        return pts
    arr = np.array(pts, dtype=float)
    a, b = arr[:-1, None, :], arr[1:, None, :]
    on_line = orient_many(a, b, rx[None, :, :]) == 0
    if not on_line.any():
        return pts
    d = (b - a)[:, 0, :]
    den = np.einsum("ij,ij->i", d, d)
    den = np.where(den > 0.0, den, np.inf)
    t = np.einsum("ijk,ik->ij", rx[None, :, :] - a, d) / den[:, None]
    hits = on_line & (t > 0.0) & (t < 1.0)
    out = [pts[0]]
    for s in range(len(pts) - 1):
        for k in sorted(np.flatnonzero(hits[s]), key=lambda j: t[s, j]):
            v = Point(float(rx[k, 0]), float(rx[k, 1]))
            if v != out[-1] and v != pts[s + 1]:
                out.append(v)
        out.append(pts[s + 1])
    return out


def _reflex_xy(poly: SimplePolygon) -> np.ndarray:
    arr = poly.__dict__.get("_reflex_xy")
    if arr is None:
        arr = poly.xy[np.array(poly.reflex, dtype=bool)]
        poly.__dict__["_reflex_xy"] = arr
    return arr


class _SleeveIndex:
    """Point location and rooted dual tree for one triangulation."""

    def __init__(self, tri: Triangulation):
        xy = tri.xy
        t = np.array(tri.triangles)
        self.tris = tri.triangles
        self.A, self.B, self.C = xy[t[:, 0]], xy[t[:, 1]], xy[t[:, 2]]
        self.lab = np.hypot(*(self.B - self.A).T)
        self.lbc = np.hypot(*(self.C - self.B).T)
        self.lca = np.hypot(*(self.A - self.C).T)
        m = len(t)
        self.parent = [-1] * m
        self.parent_edge: list[tuple[int, int] | None] = [None] * m
        self.depth = [0] * m
        seen = [False] * m
        seen[0] = True
        stack = [0]
        while stack:
            u = stack.pop()
            for v, (a, b) in tri.adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    self.parent[v] = u
                    # shared edge in the CCW order of the child triangle v
                    self.parent_edge[v] = (b, a)
                    self.depth[v] = self.depth[u] + 1
                    stack.append(v)

    def locate(self, p) -> tuple[int, float]:
        """Best triangle for ``p`` and its signed clearance (>= 0 inside)."""
        px, py = p[0], p[1]
        A, B, C = self.A, self.B, self.C
        d1 = ((B[:, 0] - A[:, 0]) * (py - A[:, 1]) - (B[:, 1] - A[:, 1]) * (px - A[:, 0])) / self.lab
        d2 = ((C[:, 0] - B[:, 0]) * (py - B[:, 1]) - (C[:, 1] - B[:, 1]) * (px - B[:, 0])) / self.lbc
        d3 = ((A[:, 0] - C[:, 0]) * (py - C[:, 1]) - (A[:, 1] - C[:, 1]) * (px - C[:, 0])) / self.lca
        score = np.minimum(np.minimum(d1, d2), d3)
        k = int(np.argmax(score))
        return k, float(score[k])

    def portals(self, ta: int, tb: int) -> list[tuple[int, int]]:
        """``(left, right)`` vertex indices of the diagonals crossed from ``ta`` to ``tb``."""
        up: list[tuple[int, int]] = []
        down: list[tuple[int, int]] = []
        a, b = ta, tb
        while self.depth[a] > self.depth[b]:
            u, v = self.parent_edge[a]
            up.append((v, u))
            a = self.parent[a]
        while self.depth[b] > self.depth[a]:
            u, v = self.parent_edge[b]
            down.append((u, v))
            b = self.parent[b]
        while a != b:
            u, v = self.parent_edge[a]
            up.append((v, u))
            a = self.parent[a]
            u, v = self.parent_edge[b]
            down.append((u, v))
            b = self.parent[b]
        return up + down[::-1]


def _index(tri: Triangulation) -> _SleeveIndex:
    idx = tri.__dict__.get("_sleeve_index")
    if idx is None:
        idx = _SleeveIndex(tri)
        tri.__dict__["_sleeve_index"] = idx
    return idx


def _on_segment(x: Point, a: Point, b: Point) -> bool:
    if orient(a, b, x) != 0:
        return False
    # orient already allows a tolerance across the line; match it along the line
    dx, dy = b[0] - a[0], b[1] - a[1]
    t = ((x[0] - a[0]) * dx + (x[1] - a[1]) * dy) / (dx * dx + dy * dy)
    return 0.0 <= t <= 1.0


def _funnel(portals: list[tuple[Point, Point]], p: Point, q: Point) -> list[Point]:
    path = [p]
    apex = left = right = p
    apex_i = left_i = right_i = 0
    i = 1
    n = len(portals)
    while i < n:
        l, r = portals[i]
        if orient(apex, right, r) >= 0:
            if apex == right or apex == left or orient(apex, left, r) < 0:
                right, right_i = r, i
            else:
                path.append(left)
                apex = right = left
                apex_i = right_i = left_i
                i = apex_i + 1
                continue
        if orient(apex, left, l) <= 0:
            if apex == left or apex == right or orient(apex, right, l) > 0:
                left, left_i = l, i
            else:
                path.append(right)
                apex = left = right
                apex_i = left_i = right_i
                i = apex_i + 1
                continue
        i += 1
    path.append(q)
    return path


def shortest_path(poly: SimplePolygon, tri: Triangulation, p, q) -> GeodesicPath:
    """The unique shortest path from ``p`` to ``q`` in the closed polygon.

    Endpoints within the boundary tolerance outside the polygon are snapped
    onto the boundary; farther points raise :class:`PointOutsideDomain`.
    """
    idx = _index(tri)
    p = poly.snap(p)
    q = poly.snap(q)
    if p == q:
        return GeodesicPath((p,), (0.0,), 0.0)
    # an endpoint numerically on top of a vertex is routed from the vertex:
    # orientation tests against its incident diagonals are pure noise
    a, b = _anchor(poly, p), _anchor(poly, q)
    if a == b:
        return GeodesicPath.from_points([p, q])
    ta, tb = idx.locate(a)[0], idx.locate(b)[0]
    verts = poly.vertices
    inner = [(verts[l], verts[r]) for l, r in idx.portals(ta, tb)]
    # a point on a diagonal (or at a vertex) belongs to the triangles on both
    # sides; start past every leading diagonal through a, and likewise for b
    lo, hi = 0, len(inner)
    while lo < hi and _on_segment(a, *inner[lo]):
        lo += 1
    while hi > lo and _on_segment(b, *inner[hi - 1]):
        hi -= 1
    portals = [(a, a), *inner[lo:hi], (b, b)]
    pts = merge_straight(_funnel(portals, a, b), short=0.0)
    pts[0], pts[-1] = p, q
    return GeodesicPath.from_points(canonical_points(poly, pts))


def _anchor(poly: SimplePolygon, p: Point) -> Point:
    d = np.hypot(*(poly.xy - np.asarray(p)).T)
    k = int(np.argmin(d))
    return poly.vertices[k] if 0.0 < d[k] <= NEAR_VERTEX * poly.diameter else p


def distance(poly: SimplePolygon, tri: Triangulation, p, q) -> float:
    return shortest_path(poly, tri, p, q).total_length


def _ccw_angle(ref, v) -> float:
    """Counter-clockwise angle from direction ``ref`` to ``v`` in [0, 2pi)."""
    ang = math.atan2(ref[0] * v[1] - ref[1] * v[0], ref[0] * v[0] + ref[1] * v[1])
    return ang + 2.0 * math.pi if ang < 0 else ang


def validate_taut(poly: SimplePolygon, path: GeodesicPath, angle_tol: float = 1e-9) -> Report:
    """Check that every bend sits on a reflex corner and wraps it tightly.

    At a reflex vertex ``v`` with interior wedge of angle ``theta`` the two
    path directions must split the wedge so that the part of the wedge not
    containing the polygon exterior spans at least ``pi``: the discrete form
    of a supporting half-disk.
    """
    violations = []
    pts = path.points
    for k in range(1, len(pts) - 1):
        v = pts[k]
        if min(dist(v, pts[k - 1]), dist(v, pts[k + 1])) <= NEAR_VERTEX * poly.diameter:
            continue  # no direction to test on a vanishing segment
        i = poly.vertex_index.get(v)
        if i is None:
            violations.append({"index": k, "point": list(v), "reason": "bend at a non-vertex point"})
            continue
        if not poly.reflex[i]:
            violations.append({"index": k, "point": list(v), "reason": "bend at a convex vertex"})
            continue
        nxt = poly.vertices[(i + 1) % poly.n]
        prv = poly.vertices[i - 1]
        ref = (nxt[0] - v[0], nxt[1] - v[1])
        theta = _ccw_angle(ref, (prv[0] - v[0], prv[1] - v[1]))
        a_in = _ccw_angle(ref, (pts[k - 1][0] - v[0], pts[k - 1][1] - v[1]))
        a_out = _ccw_angle(ref, (pts[k + 1][0] - v[0], pts[k + 1][1] - v[1]))
        # leaving along the outgoing edge may round to 2 pi instead of 0
        a_in, a_out = (0.0 if a >= 2.0 * math.pi - angle_tol else a for a in (a_in, a_out))
        for a in (a_in, a_out):
            if a > theta + angle_tol and a < 2.0 * math.pi - angle_tol:
                violations.append({"index": k, "point": list(v), "reason": "path leaves the domain at the corner"})
                break
        else:
            if abs(a_in - a_out) < math.pi - angle_tol:
                violations.append(
                    {"index": k, "point": list(v), "reason": "path can be shortened around the corner"}
                )
    return Report("taut", not violations, {"bends": max(0, len(pts) - 2)}, violations)


def _boundary_position(poly: SimplePolygon, p) -> int:
    _, i = poly.project_to_boundary(p)
    return i


def chord_components(poly: SimplePolygon, chord) -> tuple[np.ndarray, np.ndarray]:
    """Vertex loops of the two pieces of the polygon cut along ``chord``.

    Component ``A`` is bounded by the chord and the counter-clockwise boundary
    arc from the chord's first endpoint to its second.
    """
    a, b = as_point(chord[0]), as_point(chord[1])
    ia, ib = _boundary_position(poly, a), _boundary_position(poly, b)
    n = poly.n
    verts = poly.vertices

    def arc(i_from, i_to, start, end):
        pts = [start]
        k = (i_from + 1) % n
        steps = (i_to - i_from) % n
        for _ in range(steps):
            pts.append(verts[k])
            k = (k + 1) % n
        pts.append(end)
        out = []
        for p in pts:
            if not out or out[-1] != p:
                out.append(p)
        if len(out) > 1 and out[0] == out[-1]:
            out.pop()
        return np.array(out, dtype=float)

    return arc(ia, ib, a, b), arc(ib, ia, b, a)


def side_of_chord(poly: SimplePolygon, chord, x, validate_chord: bool = True) -> str:
    """Which piece of the polygon minus ``chord`` holds ``x``: ``"A"``, ``"B"`` or ``"ON"``."""
    if validate_chord and not is_chord(poly, chord):
        raise InvalidChord(f"{chord!r} is not a chord of the polygon")
    a, b = chord
    c, _ = closest_point_on_segment(x, a, b)
    if dist(x, c) <= poly.boundary_tol:
        return "ON"
    comp_a, _ = chord_components(poly, chord)
    return "A" if classify_point(comp_a, x, poly.boundary_tol) >= 0 else "B"


class _ChordSides:
    """Cached component test for one chord."""

    def __init__(self, poly, chord):
        self.poly = poly
        self.chord = (as_point(chord[0]), as_point(chord[1]))
        self.comp_a, _ = chord_components(poly, self.chord)

    def side(self, x) -> str:
        a, b = self.chord
        c, _ = closest_point_on_segment(x, a, b)
        if dist(x, c) <= self.poly.boundary_tol:
            return "ON"
        return "A" if classify_point(self.comp_a, x, self.poly.boundary_tol) >= 0 else "B"


def separates(poly: SimplePolygon, chord, x, q, r) -> bool:
    """True iff ``chord`` puts ``x`` in one piece and both ``q`` and ``r`` in the other."""
    cs = _ChordSides(poly, chord)
    sx, sq, sr = cs.side(x), cs.side(q), cs.side(r)
    return sx != "ON" and sq == sr and sq not in ("ON", sx)


def ray_hit(poly: SimplePolygon, origin, direction, skip_vertex: int | None = None):
    """First boundary point hit by the ray from ``origin`` (excluding the origin itself)."""
    ox, oy = float(origin[0]), float(origin[1])
    dx, dy = float(direction[0]), float(direction[1])
    s, e = poly.edge_starts, poly.edge_ends
    ex, ey = e[:, 0] - s[:, 0], e[:, 1] - s[:, 1]
    den = dx * ey - dy * ex
    wx, wy = s[:, 0] - ox, s[:, 1] - oy
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (wx * ey - wy * ex) / den
        u = (wx * dy - wy * dx) / den
    scale = math.hypot(dx, dy)
    ok = (den != 0) & (u >= -1e-12) & (u <= 1 + 1e-12) & (t * scale > poly.boundary_tol)
    if skip_vertex is not None:
        n = poly.n
        ok[skip_vertex] = False
        ok[(skip_vertex - 1) % n] = False
    if not ok.any():
        return None
    t_best = float(np.min(t[ok]))
    return Point(ox + t_best * dx, oy + t_best * dy)


def candidate_chords(poly: SimplePolygon, cap: int = 200, rays_per_vertex: int = 0, seed: int = 0) -> list:
    """Chords for falsification tests.

    Reflex-edge extensions come first (the chords that cut off pockets),
    then optional fans of rays from reflex corners, then vertex-to-vertex
    chords in a seeded order, stopping after ``cap`` chords in total.
    """
    out: list[tuple[Point, Point]] = []
    seen = set()

    def add(c):
        key = (c[0], c[1]) if c[0] <= c[1] else (c[1], c[0])
        if key in seen or len(out) >= cap:
            return
        if is_chord(poly, c):
            seen.add(key)
            out.append(c)

    n = poly.n
    verts = poly.vertices
    for i in range(n):
        if not poly.reflex[i]:
            continue
        v = verts[i]
        for w in (verts[i - 1], verts[(i + 1) % n]):
            h = ray_hit(poly, v, (v[0] - w[0], v[1] - w[1]), skip_vertex=i)
            if h is not None:
                add((v, h))
        if rays_per_vertex:
            nxt = verts[(i + 1) % n]
            prv = verts[i - 1]
            ref = (nxt[0] - v[0], nxt[1] - v[1])
            theta = _ccw_angle(ref, (prv[0] - v[0], prv[1] - v[1]))
            base = math.atan2(ref[1], ref[0])
            for k in range(1, rays_per_vertex + 1):
                ang = base + theta * k / (rays_per_vertex + 1)
                h = ray_hit(poly, v, (math.cos(ang), math.sin(ang)), skip_vertex=i)
                if h is not None:
                    add((v, h))
    if len(out) < cap and n > 3:
        pairs = [(i, j) for i in range(n) for j in range(i + 2, n) if not (i == 0 and j == n - 1)]
        order = np.random.default_rng(seed).permutation(len(pairs))
        for k in order:
            if len(out) >= cap:
                break
            i, j = pairs[k]
            add((verts[i], verts[j]))
    return out


def check_separation(poly: SimplePolygon, path: GeodesicPath, chords=None, samples: int = 32) -> Report:
    """Falsification test of geodesy by chords.

    No chord may put a point of the path in one piece of the polygon and
    both path endpoints in the other.  ``chords`` defaults to
    :func:`candidate_chords`.
    """
    if chords is None:
        chords = candidate_chords(poly)
    else:
        for c in chords:
            if not is_chord(poly, c):
                raise InvalidChord(f"{c!r} is not a chord of the polygon")
    pts = list(path.points) + path.sample(samples)
    q, r = path.source, path.target
    violations = []
    for c in chords:
        cs = _ChordSides(poly, c)
        sq, sr = cs.side(q), cs.side(r)
        if sq != sr or sq == "ON":
            continue
        for x in pts:
            sx = cs.side(x)
            if sx != "ON" and sx != sq:
                violations.append({"chord": [list(c[0]), list(c[1])], "point": list(x), "endpoint_side": sq})
                break
    return Report("separation", not violations, {"chords_checked": len(chords), "points": len(pts)}, violations)


def find_separating_chord(poly: SimplePolygon, x, q, r, chords=None, cap: int = 400, rays_per_vertex: int = 16):
    """Search for a chord separating ``x`` from both ``q`` and ``r``.

    Success certifies that ``x`` is off the geodesic from ``q`` to ``r``.
    ``None`` is inconclusive: the search only covers sampled chords.
    """
    pool = list(chords or []) + candidate_chords(poly, cap=cap, rays_per_vertex=rays_per_vertex)
    for c in pool:
        if separates(poly, c, x, q, r):
            return c
    return None
