"""Deterministic gallery of test domains."""
from __future__ import annotations

import math
import re

import numpy as np

from .errors import InvalidParameter
from .geom import Point, orient_many
from .polygon import SimplePolygon, validate

SQRT3 = math.sqrt(3.0)


def square(side: float = 1.0) -> SimplePolygon:
    return validate([(0, 0), (side, 0), (side, side), (0, side)])


def l_shape() -> SimplePolygon:
    return validate([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])


def equilateral(side: float = 1.0) -> SimplePolygon:
    if not side > 0:
        raise InvalidParameter("side must be positive")
    return validate([(0.0, 0.0), (side, 0.0), (0.5 * side, 0.5 * SQRT3 * side)])


def spiral(turns: int = 3, pitch: float = 1.0, width: float = 0.25) -> SimplePolygon:
    """Square spiral corridor winding ``turns`` full turns outward.

    The centerline turns left at every corner with arm lengths
    ``pitch * (1, 1, 2, 2, 3, 3, ...)``, so neighbouring parallel arms are
    ``pitch`` apart; the corridor has the given ``width`` (< ``pitch``).
    """
    if int(turns) != turns or turns < 1:
        raise InvalidParameter("turns must be an integer >= 1")
    if not 0 < width < pitch:
        raise InvalidParameter("need 0 < width < pitch")
    dirs = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)]
    centre = [(0.0, 0.0)]
    seg_dirs = []
    for k in range(4 * int(turns)):
        d = dirs[k % 4]
        length = pitch * (k // 2 + 1)
        x, y = centre[-1]
        centre.append((x + length * d[0], y + length * d[1]))
        seg_dirs.append(d)
    h = 0.5 * width
    normals = [(-d[1], d[0]) for d in seg_dirs]
    left, right = [], []
    for i, c in enumerate(centre):
        if i == 0:
            nx, ny = normals[0]
        elif i == len(centre) - 1:
            nx, ny = normals[-1]
        else:
            nx = normals[i - 1][0] + normals[i][0]
            ny = normals[i - 1][1] + normals[i][1]
        left.append((c[0] + h * nx, c[1] + h * ny))
        right.append((c[0] - h * nx, c[1] - h * ny))
    return validate(left + right[::-1])


def spiral_entrance(turns: int = 3, pitch: float = 1.0, width: float = 0.25) -> tuple[Point, Point]:
    """Centerline points at the outer mouth and at the inner dead end."""
    x = y = 0.0
    dirs = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)]
    last = None
    for k in range(4 * int(turns)):
        d = dirs[k % 4]
        length = pitch * (k // 2 + 1)
        x, y = x + length * d[0], y + length * d[1]
        last = d
    mouth = Point(x - 0.5 * width * last[0], y - 0.5 * width * last[1])
    inner = Point(0.5 * width, 0.0)
    return mouth, inner


def comb(teeth: int = 4, height: float = 3.0) -> SimplePolygon:
    """A unit-thick spine with ``teeth`` unit-wide teeth of the given height."""
    if int(teeth) != teeth or teeth < 1:
        raise InvalidParameter("teeth must be an integer >= 1")
    if not height > 0:
        raise InvalidParameter("height must be positive")
    t = int(teeth)
    w = 2.0 * t + 1.0
    pts = [(0.0, 0.0), (w, 0.0), (w, 1.0)]
    for i in range(t - 1, -1, -1):
        x0, x1 = 2.0 * i + 1.0, 2.0 * i + 2.0
        pts += [(x1, 1.0), (x1, 1.0 + height), (x0, 1.0 + height), (x0, 1.0)]
    pts.append((0.0, 1.0))
    return validate(pts)


def _koch_edge(a, b):
    ax, ay = a
    bx, by = b
    dx, dy = (bx - ax) / 3.0, (by - ay) / 3.0
    p1 = (ax + dx, ay + dy)
    p3 = (ax + 2.0 * dx, ay + 2.0 * dy)
    # rotate (dx, dy) by -60 degrees: bumps point to the right of a CCW loop
    c, s = 0.5, -0.5 * SQRT3
    apex = (p1[0] + c * dx - s * dy, p1[1] + s * dx + c * dy)
    return [p1, apex, p3]


def koch_vertices(level: int, side: float = 1.0) -> list[tuple[float, float]]:
    pts = [(0.0, 0.0), (side, 0.0), (0.5 * side, 0.5 * SQRT3 * side)]
    for _ in range(level):
        out = []
        for i, a in enumerate(pts):
            b = pts[(i + 1) % len(pts)]
            out.append(a)
            out += _koch_edge(a, b)
        pts = out
    return pts


def koch_prefix(level: int = 2, side: float = 1.0) -> SimplePolygon:
    """Level-``level`` Koch snowflake prefix with ``3 * 4**level`` edges."""
    if int(level) != level or level < 0:
        raise InvalidParameter("level must be an integer >= 0")
    return validate(koch_vertices(int(level), side), keep_collinear=True)


def koch_deep_vertex(level: int, side: float = 1.0) -> Point:
    """Tracked boundary vertex of ``koch_prefix(level)``.

    Level 0 tracks the vertex ``(side, 0)``.  From then on the target is the
    apex of the bump raised on a nested edge: starting from the base edge,
    each level keeps the rising sub-edge (first third point to apex).  The
    nested edges shrink by 1/3 per level, so the targets form a Cauchy
    sequence.
    """
    if level == 0:
        return Point(side, 0.0)
    a, b = (0.0, 0.0), (side, 0.0)
    apex = None
    for _ in range(level):
        p1, apex, _ = _koch_edge(a, b)
        a, b = p1, apex
    return Point(*apex)


def _two_opt_untangle(pts: np.ndarray, max_rounds: int = 100000) -> np.ndarray:
    n = len(pts)
    for _ in range(max_rounds):
        found = False
        for i in range(n):
            a, b = pts[i], pts[(i + 1) % n]
            js = np.arange(i + 2, n)
            if i == 0:
                js = js[js != n - 1]
            if js.size == 0:
                continue
            c, d = pts[js], pts[(js + 1) % n]
            o1 = orient_many(a, b, c)
            o2 = orient_many(a, b, d)
            o3 = orient_many(c, d, a)
            o4 = orient_many(c, d, b)
            hit = (o1 * o2 <= 0) & (o3 * o4 <= 0)
            if hit.any():
                j = int(js[np.argmax(hit)])
                pts[i + 1 : j + 1] = pts[i + 1 : j + 1][::-1].copy()
                found = True
                break
        if not found:
            return pts
    raise InvalidParameter("2-opt untangling did not converge")


def random_simple(n: int = 20, rng_seed: int = 0) -> SimplePolygon:
    """Random simple polygon on ``n`` points in the unit square.

    A seeded random permutation loop is untangled by 2-opt moves, each of
    which strictly shortens the loop, so the process terminates.
    """
    if int(n) != n or n < 3:
        raise InvalidParameter("n must be an integer >= 3")
    rng = np.random.default_rng(rng_seed)
    pts = rng.random((int(n), 2))
    pts = pts[rng.permutation(int(n))]
    pts = _two_opt_untangle(pts)
    return validate([tuple(map(float, p)) for p in pts])


GENERATORS = {
    "square": square,
    "l_shape": l_shape,
    "equilateral": equilateral,
    "spiral": spiral,
    "comb": comb,
    "koch_prefix": koch_prefix,
    "random_simple": random_simple,
}


def generate(kind: str, *args, **kwargs) -> SimplePolygon:
    """Build a gallery domain by name.

    ``kind`` may also carry positional arguments inline, e.g.
    ``"spiral(3)"`` or ``"random_simple(30, 7)"``.
    """
    m = re.fullmatch(r"\s*(\w+)\s*(?:\((.*)\))?\s*", kind)
    if not m or m.group(1) not in GENERATORS:
        raise InvalidParameter(f"unknown generator {kind!r}")
    name, inline = m.group(1), m.group(2)
    if inline:
        try:
            args = tuple(_number(tok) for tok in inline.split(",") if tok.strip()) + args
        except ValueError as exc:
            raise InvalidParameter(f"bad generator arguments in {kind!r}") from exc
    try:
        return GENERATORS[name](*args, **kwargs)
    except TypeError as exc:
        raise InvalidParameter(str(exc)) from exc


def _number(tok: str):
    tok = tok.strip()
    try:
        return int(tok)
    except ValueError:
        return float(tok)
