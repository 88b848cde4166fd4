"""Shortest paths hug reflex corners.

Walks through a few geodesics on the L-shape and the spiral corridor,
checks each against the brute-force visibility oracle, and draws them.
"""
from _common import save

from jordan_geo import l_shape, render_svg, shortest_path, spiral, triangulate, validate_taut
from jordan_geo.generators import spiral_entrance
from jordan_geo.oracle import oracle_path


def show(name, poly, pairs):
    tri = triangulate(poly)
    print(f"{name}: {poly.n} vertices, diameter {poly.diameter:.4f}")
    for p, q in pairs:
        g = shortest_path(poly, tri, p, q)
        o = oracle_path(poly, p, q)
        bends = [tuple(round(c, 4) for c in v) for v in g.points[1:-1]]
        print(f"  {p} -> {q}: length {g.total_length:.6f}, bends {bends}")
        print(f"    oracle agrees: {o.points == g.points}, taut: {validate_taut(poly, g).ok}")
    return save(f"{name}_geodesics.svg", render_svg(poly, tri, {"geodesics": [[list(p), list(q)] for p, q in pairs]}))


show("l_shape", l_shape(), [((1.5, 0.5), (0.5, 1.5)), ((1.9, 0.1), (0.1, 1.9)), ((0.2, 0.2), (1.8, 0.8))])
mouth, inner = spiral_entrance(3)
print("wrote", show("spiral", spiral(3), [(mouth, inner)]))
