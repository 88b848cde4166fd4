"""Geodesic triangles split into tails plus a thin core.

In the spiral corridor the three sides of a triangle share long tails
before they separate; only the core is a genuine triangle, and its
perimeter stays below 4D even when the tails alone are longer.
"""
from _common import save

from jordan_geo import check_perimeter_bound, check_thinness, decompose_triangle, render_svg, spiral, triangulate
from jordan_geo.generators import spiral_entrance

poly = spiral(3)
tri = triangulate(poly)
D = poly.diameter
mouth, inner = spiral_entrance(3)
p, q, r = mouth, (mouth[0] + 0.08, mouth[1] - 0.05), inner

t = decompose_triangle(poly, tri, p, q, r)
print(f"diameter D = {D:.4f}")
print("side lengths:", ", ".join(f"{s:.4f}" for s in t.side_lengths))
print("tail lengths:", ", ".join(f"{tail.total_length:.4f}" for tail in t.tails))
print(f"core perimeter {t.core_perimeter:.4f} = {t.core_perimeter / D:.3f} D")
print("perimeter bound holds:", check_perimeter_bound(t, D).ok)
thin = check_thinness(poly, tri, t, samples_per_side=12)
print(f"thin: {thin.ok} (largest excess over the comparison triangle {thin.metrics['max_excess']:.2e})")

print("wrote", save("spiral_triangle.svg", render_svg(poly, tri, {"triangles": [[list(p), list(q), list(r)]]})))
