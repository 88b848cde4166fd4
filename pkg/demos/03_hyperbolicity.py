"""How fat can a triangle be?

For the equilateral triangle of side 1 the largest distance from a side
point to the other two sides is attained at the midpoint of a side of the
boundary triangle itself: sqrt(3)/4.  Sampling more finely approaches it
from below; other domains stay under sqrt(3) D / 4.
"""
import math

from jordan_geo import TriangleSampler, comb, equilateral, estimate_delta, extremal_triangle, l_shape, square, triangulate

eq = equilateral(1.0)
tri = triangulate(eq)
print(f"target sqrt(3)/4 = {math.sqrt(3) / 4:.7f}")
for n in (4, 8, 16, 64):
    plain = estimate_delta(eq, tri, TriangleSampler(count=0, points_per_side=n, triangles=[tuple(eq.vertices)]), refine=False)
    fine = estimate_delta(eq, tri, TriangleSampler(count=0, points_per_side=n, triangles=[tuple(eq.vertices)]))
    print(f"  {n:>3} points per side: grid {plain.delta_lower:.7f}, refined {fine.delta_lower:.7f}")

for name, poly in (("square", square()), ("l_shape", l_shape()), ("comb(4)", comb(4))):
    t = triangulate(poly)
    est = estimate_delta(poly, t, TriangleSampler(count=8, points_per_side=24, seed=3, triangles=[extremal_triangle(poly)]))
    print(f"{name}: delta >= {est.delta_lower:.4f}, bound {est.bound:.4f}, ratio {est.delta_lower / est.bound:.3f}")
