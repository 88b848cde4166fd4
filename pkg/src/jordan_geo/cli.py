"""``jordan-geo``: validate polygons, compute geodesics, run certification suites.

Exit codes: 0 ok, 2 input error, 3 simplicity violation, 4 point outside
the domain, 5 certification failure.  Reports go to stdout (or ``-o``) as
JSON with ``"schema": 1``; the same seed and input give byte-identical
output.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import asymptotics as asy
from . import cat0
from .errors import (
    ArclengthOutOfRange,
    DegenerateInput,
    DegenerateTriangle,
    InvalidChord,
    InvalidParameter,
    JordanGeoError,
    PointOutsideDomain,
    SimplicityViolation,
)
from .generators import generate
from .geodesic import GeodesicPath, check_separation, candidate_chords, shortest_path, validate_taut
from .geom import Point
from .polygon import SimplePolygon, Triangulation, polygon_from_json, triangulate
from .report import SCHEMA_VERSION, digest, dumps
from .svg import render_svg

EXIT_OK, EXIT_INPUT, EXIT_SIMPLICITY, EXIT_OUTSIDE, EXIT_CERT = 0, 2, 3, 4, 5
SUITES = ("thin", "perimeter", "delta", "convexity", "separation")
SEED_ENV = "JORDAN_GEO_SEED"


class InputError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _point_arg(text: str) -> Point:
    try:
        x, y = (float(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y but got {text!r}") from None
    if not (math.isfinite(x) and math.isfinite(y)):
        raise argparse.ArgumentTypeError("coordinates must be finite")
    return Point(x, y)


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from None


def load_input(source: str) -> tuple[SimplePolygon, dict]:
    """Polygon from a JSON file, or from a generator written ``gen:NAME(ARGS)``."""
    if source.startswith("gen:"):
        poly = generate(source[4:])
        return poly, {"generator": source[4:]}
    data = _read_json(source)
    try:
        poly = polygon_from_json(data)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return poly, {"vertices": data["vertices"]}


def _header(command: str, inputs: dict) -> dict:
    return {"schema": SCHEMA_VERSION, "command": command, "inputs_digest": digest(inputs)}


def _emit(report: dict, out: str | None) -> None:
    text = dumps(report) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- commands


def cmd_validate(args) -> int:
    poly, src = load_input(args.input)
    rep = _header("validate", src)
    rep.update({"ok": True, "vertex_count": poly.n, "diameter": poly.diameter, "area": poly.area,
                "reflex_count": int(np.count_nonzero(poly.reflex))})
    _emit(rep, args.output)
    return EXIT_OK


def cmd_geodesic(args) -> int:
    poly, src = load_input(args.input)
    tri = triangulate(poly)
    path = shortest_path(poly, tri, args.p, args.q)
    rep = _header("geodesic", {"polygon": src, "p": list(args.p), "q": list(args.q)})
    taut = validate_taut(poly, path)
    rep.update({"ok": taut.ok, "length": path.total_length, "vertices": [list(v) for v in path.points], "taut": taut})
    if args.svg:
        Path(args.svg).write_text(render_svg(poly, tri, {"geodesics": [[list(args.p), list(args.q)]]}))
    _emit(rep, args.output)
    return EXIT_OK if taut.ok else EXIT_CERT


def _corrupt(poly: SimplePolygon, path: GeodesicPath) -> GeodesicPath:
    """A deliberately non-geodesic path: the first segment gets a kink."""
    a, b = path.points[0], path.points[1]
    h = 1e-3 * poly.diameter
    nx, ny = -(b[1] - a[1]), b[0] - a[0]
    norm = math.hypot(nx, ny)
    mid = (0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]))
    for sgn in (1.0, -1.0):
        kink = Point(mid[0] + sgn * h * nx / norm, mid[1] + sgn * h * ny / norm)
        if poly.classify(kink) > 0:
            return GeodesicPath.from_points([a, kink, *path.points[1:]])
    raise InvalidParameter("could not build a corrupted path")


def _triangles(poly: SimplePolygon, tri: Triangulation, n: int, seed: int):
    rng = np.random.default_rng(seed)
    return cat0.random_triangles(poly, tri, n, rng)


def _suite_thin(poly, tri, tris, args):
    worst, fails = -math.inf, []
    for k, t in enumerate(tris):
        r = cat0.check_thinness(poly, tri, t, samples_per_side=args.samples_per_side)
        worst = max(worst, r.metrics["max_excess"])
        if not r.ok:
            fails.append({"triangle": k, "vertices": [list(v) for v in t.outer_vertices], "metrics": r.metrics, "witness": r.witness})
    return {"ok": not fails, "max_excess": worst, "tolerance": 1e-7 * poly.diameter, "failures": fails}


def _suite_perimeter(poly, tri, tris, args):
    worst, fails = 0.0, []
    for k, t in enumerate(tris):
        r = cat0.check_perimeter_bound(t, poly.diameter)
        worst = max(worst, t.core_perimeter)
        if not r.ok:
            fails.append({"triangle": k, "vertices": [list(v) for v in t.outer_vertices], "core_perimeter": t.core_perimeter})
    return {"ok": not fails, "max_core_perimeter": worst, "bound_4D": 4.0 * poly.diameter, "failures": fails}


def _suite_convexity(poly, tri, tris, args):
    fails, checked, worst_turn, worst_gap = [], 0, -math.inf, -math.inf
    for k, t in enumerate(tris):
        if not t.degenerate:
            r = cat0.check_side_convexity(t)
            checked += 1
            worst_turn = max(worst_turn, *r.metrics["per_side_total_turn"].values())
            if not r.ok:
                fails.append({"triangle": k, "check": "turning", "metrics": r.metrics})
        pq, rp = t.sides[0], t.sides[2]
        d = cat0.check_distance_convexity(poly, tri, pq, rp.reversed(), n=args.convexity_samples)
        worst_gap = max(worst_gap, d.metrics["max_violation"])
        if not d.ok:
            fails.append({"triangle": k, "check": "distance", "witness": d.witness, "max_violation": d.metrics["max_violation"]})
    return {"ok": not fails, "nondegenerate": checked, "max_side_turn": worst_turn if checked else None,
            "max_midpoint_violation": worst_gap, "failures": fails}


def _suite_delta(poly, tri, triples, args):
    sampler = cat0.TriangleSampler(count=0, points_per_side=args.points_per_side, seed=args.seed,
                                   triangles=[cat0.extremal_triangle(poly), *triples])
    est = cat0.estimate_delta(poly, tri, sampler)
    return {"ok": est.ok, "estimate": est}


def _suite_separation(poly, tri, tris, args):
    chords = candidate_chords(poly, seed=args.seed)
    fails, paths = [], 0
    for k, t in enumerate(tris):
        for j, side in enumerate(t.sides):
            if side.is_degenerate:
                continue
            paths += 1
            for r in (validate_taut(poly, side), check_separation(poly, side, chords)):
                if not r.ok:
                    fails.append({"triangle": k, "side": j, "check": r.name, "witness": r.witness})
    return {"ok": not fails, "paths": paths, "chords": len(chords), "failures": fails}


_SUITE_FUNCS = {
    "thin": _suite_thin,
    "perimeter": _suite_perimeter,
    "convexity": _suite_convexity,
    "delta": _suite_delta,
    "separation": _suite_separation,
}


def cmd_certify(args) -> int:
    poly, src = load_input(args.input)
    tri = triangulate(poly)
    suites = SUITES if args.suite == "all" else (args.suite,)
    triples = _triangles(poly, tri, args.triangles, args.seed)
    tris = [cat0.decompose_triangle(poly, tri, *v) for v in triples]
    rep = _header("certify", {"polygon": src, "suite": args.suite, "triangles": args.triangles, "seed": args.seed,
                              "samples_per_side": args.samples_per_side, "points_per_side": args.points_per_side})
    rep.update({"seed": args.seed, "diameter": poly.diameter, "triangles": len(tris)})
    results = {}
    for name in suites:
        results[name] = _SUITE_FUNCS[name](poly, tri, triples if name == "delta" else tris, args)
    if args.inject_corrupt_path:
        base = tris[0].sides[0] if tris and not tris[0].sides[0].is_degenerate else shortest_path(poly, tri, poly.vertices[0], poly.vertices[poly.n // 2])
        bad = _corrupt(poly, base)
        checks = [validate_taut(poly, bad), check_separation(poly, bad)]
        results["corrupt_path_self_test"] = {"ok": all(c.ok for c in checks), "checks": checks}
    ok = all(r["ok"] for r in results.values())
    rep["suites"] = results
    rep["ok"] = ok
    _emit(rep, args.output)
    return EXIT_OK if ok else EXIT_CERT


def cmd_cone(args) -> int:
    data = _read_json(args.manifest)
    fam = asy.family_from_manifest(data)
    poly, tri, q = fam.level(args.level)
    rep = _header("cone", {"manifest": data, "level": args.level, "probe": args.probe, "C": args.C,
                           "epsilon": args.epsilon, "radius": args.radius, "basepoint2": args.basepoint2})
    ray = fam.ray(args.level)
    rep.update({"level": args.level, "diameter": poly.diameter, "target": list(q), "ray_length": ray.total_length})
    probes = {}
    if args.probe in ("disk_in_cone", "both"):
        nb = asy.default_cone(poly, ray, args.C, args.epsilon)
        probes["disk_in_cone"] = asy.probe_disk_inside_cone(poly, tri, nb)
    if args.probe in ("cone_in_disk", "both"):
        radius = 0.1 * poly.diameter if args.radius is None else args.radius
        probes["cone_in_disk"] = asy.probe_cone_inside_disk(poly, tri, fam.basepoint, q, radius, seed=args.seed)
    rep["probes"] = probes
    if args.basepoint2 is not None:
        rep["basepoint_check"] = asy.basepoint_spot_check(poly, tri, q, [fam.basepoint, args.basepoint2], args.radius)
    # a probe without a witness is inconclusive, not a failure
    rep["status"] = "witness" if all(p.found for p in probes.values()) else "inconclusive"
    _emit(rep, args.output)
    return EXIT_OK


def cmd_svg(args) -> int:
    poly, _ = load_input(args.input)
    tri = triangulate(poly)
    scene = _read_json(args.scene) if args.scene else {}
    text = render_svg(poly, tri, scene)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="jordan-geo", description="Intrinsic geodesics in simple polygons.")
    sub = ap.add_subparsers(dest="command", required=True)
    src_help = "polygon JSON file, or gen:NAME(ARGS) for a built-in domain"

    p = sub.add_parser("validate", help="check simplicity and report the diameter")
    p.add_argument("input", help=src_help)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("geodesic", help="shortest path between two points")
    p.add_argument("input", help=src_help)
    p.add_argument("p", type=_point_arg, help="x,y")
    p.add_argument("q", type=_point_arg, help="x,y")
    p.add_argument("--svg")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("certify", help="run certification suites on random triangles")
    p.add_argument("input", help=src_help)
    p.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    p.add_argument("--triangles", type=int, default=20)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--samples-per-side", type=int, default=12)
    p.add_argument("--points-per-side", type=int, default=24)
    p.add_argument("--convexity-samples", type=int, default=33)
    p.add_argument("--inject-corrupt-path", action="store_true", help=argparse.SUPPRESS)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("cone", help="cone-topology probes on a refinement family")
    p.add_argument("manifest")
    p.add_argument("--level", type=int, default=0)
    p.add_argument("--probe", choices=("disk_in_cone", "cone_in_disk", "both"), default="both")
    p.add_argument("--C", type=float, default=None, help="cone distance (default: half the ray)")
    p.add_argument("--epsilon", type=float, default=None, help="ball radius (default: 0.05 D)")
    p.add_argument("--radius", type=float, default=None, help="disk radius for cone_in_disk (default: 0.1 D)")
    p.add_argument("--basepoint2", type=_point_arg, default=None, help="second basepoint for a stability check")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_cone)

    p = sub.add_parser("svg", help="draw a scene")
    p.add_argument("input", help=src_help)
    p.add_argument("scene", nargs="?", help="scene JSON")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_svg)
    return ap


def _fail(code: int, message: str, **extra) -> int:
    print(f"jordan-geo: {message}", file=sys.stderr)
    sys.stdout.write(dumps({"schema": SCHEMA_VERSION, "ok": False, "error": message, "exit_code": code, **extra}) + "\n")
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        for name, least in (("triangles", 0), ("samples_per_side", 2), ("points_per_side", 2), ("convexity_samples", 3)):
            v = getattr(args, name, None)
            if v is not None and v < least:
                raise InputError(f"--{name.replace('_', '-')} is too small")
        return args.func(args)
    except SimplicityViolation as exc:
        return _fail(EXIT_SIMPLICITY, str(exc), edges=list(exc.edges) if exc.edges else None)
    except PointOutsideDomain as exc:
        return _fail(EXIT_OUTSIDE, str(exc), point=list(exc.point) if exc.point else None)
    except (InputError, InvalidParameter, DegenerateInput, InvalidChord, ArclengthOutOfRange, DegenerateTriangle) as exc:
        return _fail(EXIT_INPUT, str(exc))
    except JordanGeoError as exc:
        return _fail(1, f"internal error: {exc}")


if __name__ == "__main__":
    sys.exit(main())
