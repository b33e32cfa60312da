"""Symmetries and the separation argument.

Mirroring a petal left to right swaps the two families of petals glued to
it; mirroring the root petal top to bottom swaps the two sheets.  These
moves, made independently at every petal, all preserve distances.

Separation: given x and y, take n beyond both of their levels.  Cutting
away the petals of level <= n leaves 2^n subtrees, each of which is convex
once the center is added, and none of which contains y.
"""

from rose import CENTER, FLAT, get_metric, parse_point
from rose.verify import IsometryLabel, apply_isometry, compose, isometry_suite, separation_cover

metric = get_metric(FLAT)
table = metric.table

p = parse_point("R/R+:0.3:0.1", table)
q = parse_point("LL/L+:0.9:0.05", table)
for labels in ({"": "h"}, {"": "v"}, {"R": "h", "": "v"}):
    g = IsometryLabel.from_dict(labels)
    gp, gq = apply_isometry(g, p, table), apply_isometry(g, q, table)
    print(f"g = {labels}:  {p} -> {gp},  d before {metric.distance(p, q):.12f} after {metric.distance(gp, gq):.12f}")

g = IsometryLabel.from_dict({"": "h", "L": "h", "R": "h"})
print("g o g is the identity:", compose(g, g).is_identity())

r = isometry_suite(metric, 200, 8, 5)
print(f"200 random symmetries: max distance change {r['max_err']:.1e}")

x, y = CENTER, parse_point("RL/R+:0.5:0.1", table)
cover, x, y = separation_cover(table, x, y)
print(f"\nseparating {y} from the center: n = {cover.depth}, {len(cover.W)} subtrees")
print("  y lies in a subtree:", any(cover.in_W(w, y) for w in cover.W))
z = parse_point("RLLR/L+:0.7:0.02", table)
print(f"  {z} belongs to subtree {cover.component_of(z)}")
