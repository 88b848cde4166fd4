"""Boundary points as limits of rays.

A Koch prefix family pushes a tracked boundary vertex deeper at each
level.  At every level both one-sided probes find witnesses: a disk around
the target inside a cone neighbourhood, and a cone neighbourhood inside a
disk.
"""
import math

from _common import save

from jordan_geo import build_family, default_cone, probe_cone_inside_disk, probe_disk_inside_cone, render_svg

fam = build_family("koch_prefix", 4, (0.5, math.sqrt(3) / 6))
print("distances to target:", ", ".join(f"{d:.4f}" for d in fam.target_distances()))
for k in range(len(fam)):
    poly, tri, q = fam.level(k)
    ray = fam.ray(k)
    nb = default_cone(poly, ray)
    a = probe_disk_inside_cone(poly, tri, nb)
    b = probe_cone_inside_disk(poly, tri, fam.basepoint, q, 0.1 * poly.diameter)
    print(f"level {k}: {poly.n:>4} vertices, ray {ray.total_length:.4f}; "
          f"disk of radius {a.disk_radius:.4f} in N(C={nb.C:.3f}, eps={nb.epsilon:.3f}); "
          f"N(C={b.C:.3f}, eps={b.epsilon:.4f}) in disk 0.1 D")

poly, tri, q = fam.level(3)
ray = fam.ray(3)
scene = {"cones": [{"basepoint": list(fam.basepoint), "target": list(q), "C": 0.5 * ray.total_length, "epsilon": 0.05 * poly.diameter}]}
print("wrote", save("koch3_cone.svg", render_svg(poly, tri, scene)))
