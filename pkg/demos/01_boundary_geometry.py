"""Exact geometry of the (q+1)-regular tree and its boundary.

Vertices are root-based label words; boundary cylinders are ray prefixes.
Everything here is exact: distances and Busemann values are integers,
measures and kernel ratios are Fractions.
"""

from arbocoh import (
    RayPrefix,
    Vertex,
    busemann,
    cylinder_measure,
    distance,
    gromov_product,
    median,
    poisson_kernel,
)

q = 2
o = Vertex(())

print("== distances in the (q+1)-regular tree, q =", q, "==")
pairs = [(o, Vertex((0,))), (Vertex((0, 1)), Vertex((2,))), (Vertex((0, 0)), Vertex((0, 1)))]
for u, v in pairs:
    print(f"  d({u}, {v}) = {distance(u, v)}")

print("\n== Gromov products: distance from the base to a geodesic ==")
r00 = RayPrefix((0, 0, 0, 0))
r01 = RayPrefix((0, 1, 0, 0))
r1 = RayPrefix((1, 0, 0, 0))
print(f"  ({r00}, {r1})_o   = {gromov_product(r00, r1, o)}   (split at the root)")
print(f"  ({r00}, {r01})_o = {gromov_product(r00, r01, o)}   (shared first step)")

print("\n== the median of three boundary points ==")
m = median(r00, r01, r1)
print(f"  median({r00}, {r01}, {r1}) = {m}")
for a, b in [(r00, r01), (r00, r1), (r01, r1)]:
    print(f"    ({a}, {b})_median = {gromov_product(a, b, m)}  (all zero)")

print("\n== Busemann horodistance and the Radon-Nikodym kernel ==")
g = RayPrefix((0,) * 6)
x, y = o, Vertex((0,))
print(f"  toward {g}: B(x=o, y={y}) = {busemann(g, x, y)}")
print(f"  kernel ratio d(mu_y)/d(mu_x) on that cylinder = {poisson_kernel(x, y, g, q)} (exact)")
g_away = RayPrefix((1, 0, 0))
print(f"  toward {g_away}: kernel = {poisson_kernel(x, y, g_away, q)} (moving away)")

print("\n== visual measure of cylinders (exact rationals) ==")
for w in [Vertex((0,)), Vertex((0, 1)), Vertex((0, 1, 0))]:
    print(f"  mu_o(U(o, {w})) = {cylinder_measure(o, w, q)}")
total = sum(cylinder_measure(o, Vertex((i,)), q) for i in range(q + 1))
print(f"  total over the {q + 1} depth-1 cylinders = {total}")
