"""Geodesics, curvature and an independent cross-check.

Each sheet of the rose is a piece of the cone over its link tree, so a
geodesic bends only where it crosses a tree vertex, and it escapes through
the center once the angle between its ends reaches pi.  We print a few
geodesics, test the CAT(0) inequality on random triangles, and compare
the closed-form distances against brute-force shortest paths on a mesh.
"""

import math

from rose import FLAT, HYPERBOLIC, get_metric, parse_point
from rose.oracle import oracle_compare_suite
from rose.verify import cat_comparison_suite

metric = get_metric(FLAT)
table = metric.table

pairs = [
    ("-/L+:1:0.3", "RL/R+:1.1:0.1"),
    ("-/R+:1:0", "-/R-:1:0"),
    ("-/L+:0.9:0.2", "R" * 124 + "/R+:1.2:0.001"),
]
for a, b in pairs:
    p, q = parse_point(a, table), parse_point(b, table)
    path = metric.geodesic(p, q)
    print(f"d = {path.length:.9f}  through center: {path.through_center}  "
          f"angle at center: {math.degrees(metric.center_angle(p, q)):.3f} deg")
    for x in path.points:
        print("   ", x if len(str(x)) < 60 else str(x)[:28] + "..." + str(x)[-28:])

for kappa, triples in ((FLAT, 500), (HYPERBOLIC, 200)):
    r = cat_comparison_suite(get_metric(kappa), triples, 6, 3)
    print(f"{kappa.name.lower()}: {triples} triples, {len(r['violations'])} comparison violations, "
          f"largest excess {r['max_excess']:.1e}")

# the mesh oracle knows nothing about link trees; it only glues triangles
r = oracle_compare_suite(metric, 3, 0.02, 60, 1)
print(f"mesh oracle, {r['nodes']} nodes: gaps in [{r['min_gap']:.1e}, {r['max_gap']:.2e}], "
      f"halving the step shrinks the worst gap to {r['fine_max_gap']:.2e}")
