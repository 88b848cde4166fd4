"""SVG figures: the domain with geodesics, Jordan triangles and cone neighbourhoods.

Scenes are plain dicts (usually loaded from JSON)::

    {"geodesics": [[[x, y], [x, y]], ...],
     "triangles": [[[x, y], [x, y], [x, y]], ...],
     "cones": [{"basepoint": [x, y], "target": [x, y], "C": c, "epsilon": e}, ...],
     "points": [[x, y], ...]}

Every key is optional.  Output is deterministic: coordinates are written
with six decimals and the viewBox is the polygon's bounding box plus a 5%
margin.
"""
from __future__ import annotations

import numpy as np

from .asymptotics import ConeNeighborhood
from .cat0 import decompose_triangle
from .errors import InvalidParameter
from .geodesic import GeodesicPath, shortest_path
from .polygon import SimplePolygon, Triangulation, sample_points

SCENE_KEYS = ("geodesics", "triangles", "cones", "points")
CONE_SAMPLES = 600


def _f(v: float) -> str:
    s = f"{v:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _xy(p) -> str:
    # y axis points up in the domain, down in SVG
    return f"{_f(p[0])},{_f(-p[1])}"


def _point(v, what: str):
    if not (isinstance(v, (list, tuple)) and len(v) == 2 and all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in v)):
        raise InvalidParameter(f"{what} must be [x, y]")
    return (float(v[0]), float(v[1]))


def parse_scene(scene) -> dict:
    """Check a scene and return it with points as float tuples."""
    if scene is None:
        scene = {}
    if not isinstance(scene, dict):
        raise InvalidParameter("scene must be a JSON object")
    extra = set(scene) - set(SCENE_KEYS)
    if extra:
        raise InvalidParameter(f"unknown scene keys: {sorted(extra)}")
    out: dict = {k: [] for k in SCENE_KEYS}
    for k in SCENE_KEYS:
        if not isinstance(scene.get(k, []), list):
            raise InvalidParameter(f"scene {k!r} must be a list")
    for g in scene.get("geodesics", []):
        if not (isinstance(g, list) and len(g) == 2):
            raise InvalidParameter("a geodesic is a pair of points")
        out["geodesics"].append(tuple(_point(v, "geodesic end") for v in g))
    for t in scene.get("triangles", []):
        if not (isinstance(t, list) and len(t) == 3):
            raise InvalidParameter("a triangle is three points")
        out["triangles"].append(tuple(_point(v, "triangle vertex") for v in t))
    for c in scene.get("cones", []):
        if not isinstance(c, dict) or set(c) != {"basepoint", "target", "C", "epsilon"}:
            raise InvalidParameter("a cone needs exactly basepoint, target, C and epsilon")
        if not all(isinstance(c[k], (int, float)) and not isinstance(c[k], bool) for k in ("C", "epsilon")):
            raise InvalidParameter("cone C and epsilon must be numbers")
        out["cones"].append({"basepoint": _point(c["basepoint"], "basepoint"), "target": _point(c["target"], "target"),
                             "C": float(c["C"]), "epsilon": float(c["epsilon"])})
    out["points"] = [_point(v, "point") for v in scene.get("points", [])]
    return out


def _polyline(path: GeodesicPath, cls: str) -> str:
    return f'<polyline class="{cls}" points="{" ".join(_xy(p) for p in path.points)}"/>'


def _dot(p, r: float, cls: str) -> str:
    return f'<circle class="{cls}" cx="{_f(p[0])}" cy="{_f(-p[1])}" r="{_f(r)}"/>'


def render_svg(poly: SimplePolygon, tri: Triangulation, scene=None) -> str:
    """SVG text for ``poly`` and the objects listed in ``scene``."""
    parsed = parse_scene(scene)
    lo, hi = poly.xy.min(axis=0), poly.xy.max(axis=0)
    size = hi - lo
    m = 0.05 * float(max(size))
    x0, y0 = lo[0] - m, -hi[1] - m
    w, h = size[0] + 2 * m, size[1] + 2 * m
    unit = float(max(w, h))
    sw, dot = 0.004 * unit, 0.008 * unit
    body = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_f(x0)} {_f(y0)} {_f(w)} {_f(h)}" width="600" height="{_f(600 * h / w)}">',
        "<style>"
        f"polyline,polygon{{fill:none;stroke-width:{_f(sw)};stroke-linejoin:round}}"
        ".domain{fill:#f4f1e8;stroke:#333}"
        ".geodesic{stroke:#1f5fa8}"
        ".side{stroke:#7a7a7a}"
        ".tail{stroke:#b0402b}"
        ".core{fill:#cfe3c4;fill-opacity:0.7;stroke:#2e7d32}"
        ".ray{stroke:#6a3d9a}"
        ".ball{fill:#6a3d9a;fill-opacity:0.25;stroke:none}"
        ".member{fill:#6a3d9a}"
        ".bifurcation{fill:#2e7d32}"
        ".vertex{fill:#333}"
        ".mark{fill:#b0402b}"
        "</style>",
        f'<polygon class="domain" points="{" ".join(_xy(p) for p in poly.vertices)}"/>',
    ]
    for p, q in parsed["geodesics"]:
        body.append(_polyline(shortest_path(poly, tri, p, q), "geodesic"))
    for p, q, r in parsed["triangles"]:
        t = decompose_triangle(poly, tri, p, q, r)
        if not t.degenerate:
            core = t.core_polygon()
            body.append(f'<polygon class="core" points="{" ".join(_xy(v) for v in core)}"/>')
        for side in t.sides:
            body.append(_polyline(side, "side"))
        for tail in t.tails:
            if not tail.is_degenerate:
                body.append(_polyline(tail, "tail"))
        for v in t.outer_vertices:
            body.append(_dot(v, dot, "vertex"))
        for v in t.bifurcation_points:
            body.append(_dot(v, 0.8 * dot, "bifurcation"))
    for c in parsed["cones"]:
        ray = shortest_path(poly, tri, c["basepoint"], c["target"])
        nb = ConeNeighborhood(ray.source, ray, c["C"], c["epsilon"])
        centre = nb.center
        body.append(_dot(centre, nb.epsilon, "ball"))
        rng = np.random.default_rng(0)
        for x in sample_points(poly, tri, CONE_SAMPLES, rng):
            if nb.contains_path(shortest_path(poly, tri, nb.basepoint, x)):
                body.append(_dot(x, 0.4 * dot, "member"))
        body.append(_polyline(ray, "ray"))
        body.append(_dot(ray.source, dot, "vertex"))
    for p in parsed["points"]:
        body.append(_dot(p, dot, "mark"))
    body.append("</svg>")
    return "\n".join(body) + "\n"
