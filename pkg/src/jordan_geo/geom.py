"""Planar primitives and filtered orientation predicates.

All angles are in radians and the plane carries its standard
counter-clockwise orientation.

The orientation test is error-bound filtered: the determinant of
``(b - a, c - a)`` is trusted when its magnitude exceeds
``ORIENT_EPS * M * min(M, S)`` (``M`` the largest absolute coordinate
involved, ``S`` the largest coordinate difference) and snapped to zero
otherwise.  Rounding in the differences grows with ``M`` and the
determinant scales with ``S``, so tiny triangles far from the origin keep
a tight band.  Geodesics hug reflex corners, so
near-collinear triples are the common case rather than the exception; the
snap makes those tests agree across the funnel, the visibility oracle and
the polygon validator.
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

ORIENT_EPS = 1e-12


class Point(NamedTuple):
    x: float
    y: float


class Segment(NamedTuple):
    a: Point
    b: Point


def as_point(p) -> Point:
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"non-finite coordinate in {p!r}")
    return Point(x, y)


def cross(o, a, b) -> float:
    """Twice the signed area of triangle ``o a b``."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def orient_bound(a, b, c) -> float:
    m = max(abs(a[0]), abs(a[1]), abs(b[0]), abs(b[1]), abs(c[0]), abs(c[1]))
    span = max(abs(b[0] - a[0]), abs(b[1] - a[1]), abs(c[0] - a[0]), abs(c[1] - a[1]), abs(c[0] - b[0]), abs(c[1] - b[1]))
    return ORIENT_EPS * m * min(m, span)


def orient(a, b, c) -> int:
    """Sign of the signed area of ``abc``: +1 for a left (CCW) turn."""
    det = cross(a, b, c)
    if abs(det) <= orient_bound(a, b, c):
        return 0
    return 1 if det > 0 else -1


def orient_many(a, b, c) -> np.ndarray:
    """Vectorized :func:`orient`; arguments broadcast as ``(..., 2)`` arrays."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    det = (b[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1]) - (b[..., 1] - a[..., 1]) * (
        c[..., 0] - a[..., 0]
    )
    m = np.maximum(np.maximum(np.abs(a).max(axis=-1), np.abs(b).max(axis=-1)), np.abs(c).max(axis=-1))
    span = np.maximum(np.maximum(np.abs(b - a).max(axis=-1), np.abs(c - a).max(axis=-1)), np.abs(c - b).max(axis=-1))
    sign = np.sign(det).astype(np.int8)
    sign[np.abs(det) <= ORIENT_EPS * m * np.minimum(m, span)] = 0
    return sign


def dist(a, b) -> float:
    return math.hypot(b[0] - a[0], b[1] - a[1])


def _between(a, b, c) -> bool:
    """For collinear ``a, b, c``: does ``c`` lie on the closed segment ``ab``?"""
    return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])


def segments_properly_intersect(s1, s2) -> bool:
    """True iff the open segments cross at a single interior point."""
    a, b = s1
    c, d = s2
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    return o1 * o2 < 0 and o3 * o4 < 0


def segments_intersect(s1, s2) -> bool:
    """True iff the closed segments share at least one point."""
    a, b = s1
    c, d = s2
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and _between(a, b, c):
        return True
    if o2 == 0 and _between(a, b, d):
        return True
    if o3 == 0 and _between(c, d, a):
        return True
    if o4 == 0 and _between(c, d, b):
        return True
    return False


def turning_angle(incoming, outgoing) -> float:
    """Signed exterior angle from ``incoming`` to ``outgoing``, in (-pi, pi].

    Positive values are left (counter-clockwise) turns.
    """
    ux, uy = float(incoming[0]), float(incoming[1])
    vx, vy = float(outgoing[0]), float(outgoing[1])
    if (ux == 0.0 and uy == 0.0) or (vx == 0.0 and vy == 0.0):
        raise ValueError("turning angle of a zero-length direction")
    ang = math.atan2(ux * vy - uy * vx, ux * vx + uy * vy)
    if ang <= -math.pi:
        ang = math.pi
    return ang


def direction(a, b) -> tuple[float, float]:
    return (b[0] - a[0], b[1] - a[1])


def closest_point_on_segment(p, a, b) -> tuple[Point, float]:
    """Closest point of the closed segment ``ab`` to ``p`` and its parameter."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    den = dx * dx + dy * dy
    if den == 0.0:
        return Point(a[0], a[1]), 0.0
    t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / den
    t = min(1.0, max(0.0, t))
    if t == 0.0:
        return Point(a[0], a[1]), 0.0
    if t == 1.0:
        return Point(b[0], b[1]), 1.0
    return Point(a[0] + t * dx, a[1] + t * dy), t


def point_segment_distance(p, a, b) -> float:
    c, _ = closest_point_on_segment(p, a, b)
    return dist(p, c)


def point_segment_distances(p, starts: np.ndarray, ends: np.ndarray) -> np.ndarray:
    """Distances from ``p`` to many segments given as ``(n, 2)`` arrays."""
    d = ends - starts
    den = np.einsum("ij,ij->i", d, d)
    w = np.asarray(p, dtype=float) - starts
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.where(den > 0, np.einsum("ij,ij->i", w, d) / den, 0.0)
    t = np.clip(t, 0.0, 1.0)
    proj = starts + t[:, None] * d
    return np.hypot(proj[:, 0] - p[0], proj[:, 1] - p[1])


def triangle_incenter(a, b, c) -> Point:
    la, lb, lc = dist(b, c), dist(c, a), dist(a, b)
    s = la + lb + lc
    if s == 0.0:
        return Point(a[0], a[1])
    return Point((la * a[0] + lb * b[0] + lc * c[0]) / s, (la * a[1] + lb * b[1] + lc * c[1]) / s)


def signed_area(vertices) -> float:
    v = np.asarray(vertices, dtype=float)
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))
