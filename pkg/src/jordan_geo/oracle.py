"""Brute-force geodesics: visibility graph plus Dijkstra.

Slow on purpose and independent of the funnel code in
:mod:`jordan_geo.geodesic`; it exists to cross-check it.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field

import numpy as np

from .errors import InternalError
from .geodesic import GeodesicPath, canonical_points
from .geom import Point, as_point, orient_many
from .polygon import SimplePolygon, classify_point

VISIBILITY_TOL = 1e-12


@dataclass
class VisibilityGraph:
    nodes: list[Point]
    adjacency: list[dict[int, float]]
    n_polygon: int
    index: dict[Point, int] = field(default_factory=dict)

    def has_edge(self, a, b) -> bool:
        i, j = self.index[as_point(a)], self.index[as_point(b)]
        return j in self.adjacency[i]

    def edge_set(self) -> set[tuple[int, int]]:
        return {(i, j) for i, nb in enumerate(self.adjacency) for j in nb if i < j}


def _visible_from(poly: SimplePolygon, a: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """Closed-domain visibility from ``a`` to each row of ``targets``."""
    # endpoints are already snapped, so only rounding noise needs absorbing
    tol = VISIBILITY_TOL * poly.diameter
    xy = poly.xy
    s = xy[None, :, :]
    e = poly.edge_ends[None, :, :]
    b = targets[:, None, :]
    aa = np.broadcast_to(a, b.shape)
    o1 = orient_many(aa, b, s)
    o2 = orient_many(aa, b, e)
    o3 = orient_many(s, e, aa)
    o4 = orient_many(s, e, b)
    crossing = ((o1 * o2 < 0) & (o3 * o4 < 0)).any(axis=1)
    vis = ~crossing
    d = targets - a
    den = np.einsum("ij,ij->i", d, d)
    for k in np.flatnonzero(vis):
        if den[k] == 0.0:
            vis[k] = classify_point(xy, targets[k], tol) >= 0
            continue
        # split at polygon vertices lying on the open segment, test each piece
        on_line = np.flatnonzero(o1[k] == 0)
        ts = [0.0, 1.0]
        if on_line.size:
            t = ((xy[on_line] - a) @ d[k]) / den[k]
            ts += [float(v) for v in t if 0.0 < v < 1.0]
            ts.sort()
        for t0, t1 in zip(ts, ts[1:]):
            if t1 > t0:
                m = a + 0.5 * (t0 + t1) * d[k]
                if classify_point(xy, m, tol) < 0:
                    vis[k] = False
                    break
    return vis


def build_visibility(poly: SimplePolygon, extra_points=()) -> VisibilityGraph:
    """Visibility graph on the polygon vertices plus ``extra_points``.

    Segments may graze reflex vertices and run along edges (closed-domain
    convention); any segment that crosses the boundary is excluded.  Extra
    points are snapped like the funnel does (:meth:`SimplePolygon.snap`).
    """
    return _build(poly, [poly.snap(p) for p in extra_points])


def _build(poly: SimplePolygon, extras: list[Point]) -> VisibilityGraph:
    base = _base_graph(poly)
    nodes = list(poly.vertices)
    adjacency = [dict(nb) for nb in base]
    index = {p: i for i, p in enumerate(nodes)}
    for p in extras:
        if p in index:
            continue
        _attach(poly, nodes, adjacency, index, p)
    return VisibilityGraph(nodes, adjacency, poly.n, index)


def _base_graph(poly: SimplePolygon) -> list[dict[int, float]]:
    cached = poly.__dict__.get("_visibility_base")
    if cached is not None:
        return cached
    xy = poly.xy
    n = poly.n
    adjacency: list[dict[int, float]] = [dict() for _ in range(n)]
    for i in range(n - 1):
        js = np.arange(i + 1, n)
        vis = _visible_from(poly, xy[i], xy[js])
        for j in js[vis]:
            w = float(np.hypot(*(xy[j] - xy[i])))
            adjacency[i][int(j)] = w
            adjacency[int(j)][i] = w
    poly.__dict__["_visibility_base"] = adjacency
    return adjacency


def _attach(poly, nodes, adjacency, index, p) -> None:
    k = len(nodes)
    nodes.append(p)
    index[p] = k
    adjacency.append({})
    others = np.array(nodes[:-1], dtype=float)
    vis = _visible_from(poly, np.array(p, dtype=float), others)
    for j in np.flatnonzero(vis):
        w = float(np.hypot(others[j, 0] - p[0], others[j, 1] - p[1]))
        adjacency[k][int(j)] = w
        adjacency[int(j)][k] = w


def oracle_shortest_path(g: VisibilityGraph, p, q, poly: SimplePolygon | None = None) -> GeodesicPath:
    """Dijkstra from ``p`` to ``q``.

    Equal-length ties (within a few ulps) go to the route with fewer hops,
    then to the lexicographically smaller predecessor.  A tie between a
    straight edge and a chain of collinear vertices is rounding, and the
    straight edge is the honest answer.  When
    ``poly`` is given the vertex list is put in canonical form (see
    :func:`jordan_geo.geodesic.canonical_points`).
    """
    p, q = as_point(p), as_point(q)
    src, dst = g.index[p], g.index[q]
    if src == dst:
        return GeodesicPath((p,), (0.0,), 0.0)
    n = len(g.nodes)
    inf = float("inf")
    best = [inf] * n
    pred = [-1] * n
    hops = [0] * n
    done = [False] * n
    best[src] = 0.0
    heap = [(0.0, src)]
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        if u == dst:
            break
        for v, w in g.adjacency[u].items():
            if done[v]:
                continue
            nd = d + w
            if nd < best[v] - 1e-15 * max(1.0, nd):
                best[v], pred[v], hops[v] = nd, u, hops[u] + 1
                heapq.heappush(heap, (nd, v))
            elif nd <= best[v] + 1e-15 * max(1.0, nd) and (hops[u] + 1, g.nodes[u]) < (hops[v], g.nodes[pred[v]]):
                pred[v], hops[v] = u, hops[u] + 1
    if not done[dst]:
        raise InternalError("target unreachable in the visibility graph")
    chain = [dst]
    while chain[-1] != src:
        chain.append(pred[chain[-1]])
    pts = [g.nodes[i] for i in reversed(chain)]
    if poly is not None:
        pts = canonical_points(poly, pts)
    return GeodesicPath.from_points(pts)


def oracle_path(poly: SimplePolygon, p, q) -> GeodesicPath:
    """Convenience: build the graph with ``p`` and ``q`` and run Dijkstra."""
    p, q = poly.snap(p), poly.snap(q)
    g = _build(poly, [p, q])
    return oracle_shortest_path(g, p, q, poly)
