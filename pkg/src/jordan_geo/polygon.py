"""Simple polygons as models of Jordan domains.

A :class:`SimplePolygon` is an immutable counter-clockwise vertex loop.  It
is produced by :func:`validate`, which normalizes orientation, strips
duplicate and collinear-run vertices and rejects self-intersections.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from .errors import DegenerateInput, PointOutsideDomain, SimplicityViolation
from .geom import (
    Point,
    as_point,
    closest_point_on_segment,
    dist,
    orient,
    orient_many,
    point_segment_distances,
    signed_area,
)

BOUNDARY_REL_TOL = 1e-9


@dataclass(frozen=True)
class SimplePolygon:
    vertices: tuple[Point, ...]
    diameter: float
    keep_collinear: bool = field(default=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def xy(self) -> np.ndarray:
        arr = np.array(self.vertices, dtype=float)
        arr.setflags(write=False)
        return arr

    @cached_property
    def edge_starts(self) -> np.ndarray:
        return self.xy

    @cached_property
    def edge_ends(self) -> np.ndarray:
        arr = np.roll(self.xy, -1, axis=0)
        arr.setflags(write=False)
        return arr

    @cached_property
    def area(self) -> float:
        return float(signed_area(self.xy))

    @property
    def boundary_tol(self) -> float:
        """Absolute distance within which a point counts as on the boundary."""
        return BOUNDARY_REL_TOL * self.diameter

    @cached_property
    def reflex(self) -> tuple[bool, ...]:
        v = self.vertices
        n = len(v)
        return tuple(orient(v[i - 1], v[i], v[(i + 1) % n]) < 0 for i in range(n))

    @cached_property
    def vertex_index(self) -> dict[Point, int]:
        return {p: i for i, p in enumerate(self.vertices)}

    def is_reflex_vertex(self, p) -> bool:
        i = self.vertex_index.get(Point(float(p[0]), float(p[1])))
        return i is not None and self.reflex[i]

    def boundary_distances(self, p) -> np.ndarray:
        return point_segment_distances(p, self.edge_starts, self.edge_ends)

    def distance_to_boundary(self, p) -> float:
        return float(self.boundary_distances(p).min())

    def project_to_boundary(self, p) -> tuple[Point, int]:
        """Nearest boundary point of ``p`` and the index of its edge."""
        i = int(np.argmin(self.boundary_distances(p)))
        c, _ = closest_point_on_segment(p, self.vertices[i], self.vertices[(i + 1) % self.n])
        return c, i

    def snap(self, p) -> Point:
        """``p`` itself when it is in the closed polygon, else its boundary projection.

        Only points within :attr:`boundary_tol` of the boundary are projected;
        anything farther raises :class:`PointOutsideDomain`.
        """
        p = as_point(p)
        if classify_point(self.xy, p, 0.0) >= 0:
            return p
        if self.distance_to_boundary(p) <= self.boundary_tol:
            return self.project_to_boundary(p)[0]
        raise PointOutsideDomain(f"point {tuple(p)} is outside the polygon", point=p)

    def classify(self, p, tol: float | None = None) -> int:
        """+1 strictly inside, 0 on the boundary (within ``tol``), -1 outside."""
        return classify_point(self.xy, p, self.boundary_tol if tol is None else tol)

    def contains(self, p, tol: float | None = None) -> bool:
        """Membership in the closed polygon."""
        return self.classify(p, tol) >= 0

    def to_json(self) -> dict:
        return {"vertices": [[v.x, v.y] for v in self.vertices]}


def classify_point(xy: np.ndarray, p, tol: float) -> int:
    """Crossing-number point location in a closed vertex loop ``xy``."""
    starts = xy
    ends = np.roll(xy, -1, axis=0)
    if point_segment_distances(p, starts, ends).min() <= tol:
        return 0
    px, py = float(p[0]), float(p[1])
    y0, y1 = starts[:, 1], ends[:, 1]
    straddle = (y0 > py) != (y1 > py)
    with np.errstate(divide="ignore", invalid="ignore"):
        xc = starts[:, 0] + (py - y0) * (ends[:, 0] - starts[:, 0]) / (y1 - y0)
    crossings = np.count_nonzero(straddle & (xc > px))
    return 1 if crossings % 2 else -1


def _strip_loop(pts: list[Point], keep_collinear: bool) -> list[Point]:
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        out = []
        for p in pts:
            if not out or out[-1] != p:
                out.append(p)
        while len(out) > 1 and out[0] == out[-1]:
            out.pop()
        if len(out) != len(pts):
            changed = True
        pts = out
        if keep_collinear or len(pts) < 3:
            continue
        n = len(pts)
        for i in range(n):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
            if orient(a, b, c) == 0 and _strictly_between(a, c, b):
                del pts[i]
                changed = True
                break
    return pts


def _strictly_between(a, c, b) -> bool:
    """For collinear ``a, b, c``: is ``b`` strictly inside segment ``ac``?"""
    dx, dy = c[0] - a[0], c[1] - a[1]
    t = ((b[0] - a[0]) * dx + (b[1] - a[1]) * dy) / (dx * dx + dy * dy) if (dx or dy) else -1.0
    return 0.0 < t < 1.0


def _check_simple(pts: list[Point]) -> None:
    n = len(pts)
    xy = np.array(pts, dtype=float)
    starts = xy
    ends = np.roll(xy, -1, axis=0)
    for i in range(n):
        a, b = starts[i], ends[i]
        # adjacent edges: a fold-back (spike) is the only possible overlap
        nxt = pts[(i + 2) % n]
        if orient(pts[i], pts[(i + 1) % n], nxt) == 0 and not _strictly_between(pts[i], nxt, pts[(i + 1) % n]):
            raise SimplicityViolation(f"edges {i} and {(i + 1) % n} fold back onto each other", (i, (i + 1) % n))
        js = np.arange(i + 2, n)
        if i == 0:
            js = js[js != n - 1]
        if js.size == 0:
            continue
        c, d = starts[js], ends[js]
        o1 = orient_many(a, b, c)
        o2 = orient_many(a, b, d)
        o3 = orient_many(c, d, a)
        o4 = orient_many(c, d, b)
        hit = (o1 * o2 <= 0) & (o3 * o4 <= 0)
        colinear = (o1 == 0) & (o2 == 0)
        if colinear.any():
            lo = np.minimum(c, d)
            hi = np.maximum(c, d)
            overlap = np.all(
                (np.maximum(lo, np.minimum(a, b)) <= np.minimum(hi, np.maximum(a, b))), axis=1
            )
            hit = np.where(colinear, overlap, hit)
        if hit.any():
            j = int(js[np.argmax(hit)])
            raise SimplicityViolation(f"edges {i} and {j} intersect", (i, j))


def validate(raw_vertices, keep_collinear: bool = False) -> SimplePolygon:
    """Normalize a raw vertex loop into a counter-clockwise simple polygon.

    Exact duplicates are dropped and, unless ``keep_collinear`` is set,
    vertices in the middle of collinear runs are removed.  Clockwise input is
    reversed.  Raises :class:`SimplicityViolation` naming an offending edge
    pair, or :class:`DegenerateInput` when fewer than three vertices remain.
    """
    pts = [as_point(p) for p in raw_vertices]
    if len(pts) < 3:
        raise DegenerateInput("a polygon needs at least 3 vertices")
    pts = _strip_loop(pts, keep_collinear)
    if len(pts) < 3:
        raise DegenerateInput("fewer than 3 distinct vertices after normalization")
    if all(orient(pts[0], pts[1], p) == 0 for p in pts[2:]):
        raise DegenerateInput("polygon has zero area")
    _check_simple(pts)
    area = signed_area(pts)
    if area == 0.0:
        raise DegenerateInput("polygon has zero area")
    if area < 0:
        pts = [pts[0]] + pts[:0:-1]
    return SimplePolygon(tuple(pts), diameter(pts), keep_collinear)


def convex_hull(points) -> list[Point]:
    """Andrew's monotone chain; CCW hull without collinear points."""
    pts = sorted(set(Point(float(p[0]), float(p[1])) for p in points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and orient(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]


def diameter(points) -> float:
    """Euclidean diameter of a point set by rotating calipers on its hull."""
    hull = convex_hull(points)
    h = len(hull)
    if h == 1:
        return 0.0
    if h == 2:
        return dist(hull[0], hull[1])

    def area2(i, j, k):
        a, b, c = hull[i % h], hull[j % h], hull[k % h]
        return abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))

    best = 0.0
    j = 1
    for i in range(h):
        # advance the antipodal pointer while the edge (i, i+1) gets farther
        while area2(i, i + 1, j + 1) > area2(i, i + 1, j):
            j += 1
        best = max(best, dist(hull[i], hull[j % h]), dist(hull[(i + 1) % h], hull[j % h]))
    return best


def diameter_brute_force(points) -> float:
    pts = list(points)
    best = 0.0
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            best = max(best, dist(pts[i], pts[j]))
    return best


@dataclass(frozen=True, eq=False)
class Triangulation:
    """Triangles as CCW vertex-index triples plus dual adjacency.

    ``adjacency[t]`` lists ``(neighbor, (u, v))`` where ``(u, v)`` is the
    shared diagonal in the CCW order of triangle ``t``.  ``xy`` is the vertex
    array of the triangulated polygon.
    """

    triangles: tuple[tuple[int, int, int], ...]
    adjacency: tuple[tuple[tuple[int, tuple[int, int]], ...], ...]
    xy: np.ndarray = field(repr=False)

    def is_tree(self) -> bool:
        m = len(self.triangles)
        if m == 0:
            return False
        edges = sum(len(a) for a in self.adjacency) // 2
        if edges != m - 1:
            return False
        seen = {0}
        stack = [0]
        while stack:
            t = stack.pop()
            for nb, _ in self.adjacency[t]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return len(seen) == m


def triangulate(poly: SimplePolygon) -> Triangulation:
    """Ear-clipping triangulation with ``n - 2`` triangles."""
    xy = poly.xy
    n = poly.n
    prev = list(range(-1, n - 1))
    prev[0] = n - 1
    nxt = list(range(1, n + 1))
    nxt[-1] = 0
    alive = np.ones(n, dtype=bool)
    tris: list[tuple[int, int, int]] = []

    def is_ear(i: int) -> bool:
        a, b, c = prev[i], i, nxt[i]
        if orient(xy[a], xy[b], xy[c]) <= 0:
            return False
        cand = np.flatnonzero(alive)
        cand = cand[(cand != a) & (cand != b) & (cand != c)]
        if cand.size == 0:
            return True
        pts = xy[cand]
        o1 = orient_many(xy[a], xy[b], pts)
        o2 = orient_many(xy[b], xy[c], pts)
        o3 = orient_many(xy[c], xy[a], pts)
        inside = (o1 >= 0) & (o2 >= 0) & (o3 >= 0)
        return not inside.any()

    remaining = n
    i = 0
    stall = 0
    while remaining > 3:
        if is_ear(i):
            a, c = prev[i], nxt[i]
            tris.append((a, i, c))
            alive[i] = False
            nxt[a] = c
            prev[c] = a
            remaining -= 1
            stall = 0
            i = a
            continue
        i = nxt[i]
        stall += 1
        if stall > remaining:
            # numerical dead end; clip the most convex tip
            cand = [j for j in np.flatnonzero(alive)]
            i = max(cand, key=lambda j: _tip_angle_score(xy, prev[j], j, nxt[j]))
            a, c = prev[i], nxt[i]
            tris.append((a, i, c))
            alive[i] = False
            nxt[a] = c
            prev[c] = a
            remaining -= 1
            stall = 0
            i = a
    i = int(np.flatnonzero(alive)[0])
    tris.append((prev[i], i, nxt[i]))
    return Triangulation(tuple(tris), _adjacency(tris), poly.xy)


def _tip_angle_score(xy, a, b, c) -> float:
    u = xy[a] - xy[b]
    v = xy[c] - xy[b]
    return float(u[0] * v[1] - u[1] * v[0])


def _adjacency(tris) -> tuple:
    owner: dict[tuple[int, int], list[int]] = {}
    for t, (a, b, c) in enumerate(tris):
        for u, v in ((a, b), (b, c), (c, a)):
            owner.setdefault((min(u, v), max(u, v)), []).append(t)
    adj: list[list] = [[] for _ in tris]
    for t, (a, b, c) in enumerate(tris):
        for u, v in ((a, b), (b, c), (c, a)):
            for s in owner[(min(u, v), max(u, v))]:
                if s != t:
                    adj[t].append((s, (u, v)))
    return tuple(tuple(a) for a in adj)


def triangle_areas(poly: SimplePolygon, tri: Triangulation) -> np.ndarray:
    t = np.array(tri.triangles)
    a, b, c = poly.xy[t[:, 0]], poly.xy[t[:, 1]], poly.xy[t[:, 2]]
    return 0.5 * ((b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1]) - (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0]))


def segment_in_closed_loop(xy: np.ndarray, a, b, tol: float) -> bool:
    """Does the closed segment ``ab`` stay inside the closed vertex loop ``xy``?

    Grazing a reflex vertex or running along an edge is allowed; crossing
    the boundary is not.
    """
    if a[0] == b[0] and a[1] == b[1]:
        return classify_point(xy, a, tol) >= 0
    starts = xy
    ends = np.roll(xy, -1, axis=0)
    o1 = orient_many(a, b, starts)
    o2 = orient_many(a, b, ends)
    o3 = orient_many(starts, ends, a)
    o4 = orient_many(starts, ends, b)
    if np.any((o1 * o2 < 0) & (o3 * o4 < 0)):
        return False
    ax, ay = float(a[0]), float(a[1])
    dx, dy = float(b[0]) - ax, float(b[1]) - ay
    den = dx * dx + dy * dy
    on_line = np.flatnonzero(o1 == 0)
    ts = [0.0, 1.0]
    for k in on_line:
        t = ((xy[k, 0] - ax) * dx + (xy[k, 1] - ay) * dy) / den
        if 0.0 < t < 1.0:
            ts.append(float(t))
    ts.sort()
    for t0, t1 in zip(ts, ts[1:]):
        if t1 - t0 <= 0.0:
            continue
        tm = 0.5 * (t0 + t1)
        if classify_point(xy, (ax + tm * dx, ay + tm * dy), tol) < 0:
            return False
    return True


def segment_inside(poly: SimplePolygon, a, b) -> bool:
    return segment_in_closed_loop(poly.xy, a, b, poly.boundary_tol)


def on_boundary(poly: SimplePolygon, p) -> bool:
    return poly.distance_to_boundary(p) <= poly.boundary_tol


def is_chord(poly: SimplePolygon, s) -> bool:
    """Endpoints on the boundary, open segment in the open interior."""
    a, b = as_point(s[0]), as_point(s[1])
    if a == b or not on_boundary(poly, a) or not on_boundary(poly, b):
        return False
    tol = poly.boundary_tol
    starts, ends = poly.edge_starts, poly.edge_ends
    o1 = orient_many(a, b, starts)
    o2 = orient_many(a, b, ends)
    o3 = orient_many(starts, ends, a)
    o4 = orient_many(starts, ends, b)
    if np.any((o1 * o2 < 0) & (o3 * o4 < 0)):
        return False
    dx, dy = b[0] - a[0], b[1] - a[1]
    den = dx * dx + dy * dy
    length = math.sqrt(den)
    for k in range(poly.n):
        v = poly.xy[k]
        t = ((v[0] - a[0]) * dx + (v[1] - a[1]) * dy) / den
        if 0.0 < t < 1.0 and t * length > tol and (1.0 - t) * length > tol:
            off = abs(dx * (v[1] - a[1]) - dy * (v[0] - a[0])) / length
            if off <= tol:
                return False
    mid = (0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]))
    return poly.classify(mid) > 0


def sample_points(poly: SimplePolygon, tri: Triangulation, count: int, rng: np.random.Generator) -> list[Point]:
    """Uniform random points of the polygon via area-weighted triangles."""
    areas = triangle_areas(poly, tri)
    probs = areas / areas.sum()
    t = np.array(tri.triangles)
    picks = rng.choice(len(t), size=count, p=probs)
    u = rng.random((count, 2))
    flip = u.sum(axis=1) > 1.0
    u[flip] = 1.0 - u[flip]
    a = poly.xy[t[picks, 0]]
    b = poly.xy[t[picks, 1]]
    c = poly.xy[t[picks, 2]]
    pts = a + u[:, :1] * (b - a) + u[:, 1:] * (c - a)
    return [Point(float(x), float(y)) for x, y in pts]


def load_polygon(path) -> SimplePolygon:
    """Read ``{"vertices": [[x, y], ...]}`` and validate it."""
    data = json.loads(Path(path).read_text())
    return polygon_from_json(data)


def polygon_from_json(data) -> SimplePolygon:
    if not isinstance(data, dict) or "vertices" not in data:
        raise ValueError("polygon JSON must be an object with a 'vertices' list")
    verts = data["vertices"]
    if not isinstance(verts, list) or not all(
        isinstance(v, (list, tuple)) and len(v) == 2 and all(isinstance(c, (int, float)) for c in v)
        for v in verts
    ):
        raise ValueError("'vertices' must be a list of [x, y] number pairs")
    return validate(verts, keep_collinear=bool(data.get("keep_collinear", False)))


def save_polygon(poly: SimplePolygon, path) -> None:
    Path(path).write_text(json.dumps(poly.to_json()) + "\n")
