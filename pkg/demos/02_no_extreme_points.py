"""Every point of the rose sits strictly inside some geodesic segment.

The proof is constructive, and so is this script: for each kind of point
we exhibit two endpoints a, b and check d(a, p) + d(p, b) = d(a, b).

* the center is the midpoint of the root petal's central segment;
* a point short of the outer edge lies on a radial segment;
* a point on the base edge slides along that edge;
* an outer corner is the foot of the next petal's median, so it is the
  midpoint of a short segment across that petal's base.
"""

from rose import CENTER, FLAT, UPPER, get_metric, parse_point
from rose.core import corner
from rose.verify import extreme_scan, straddle_witness

metric = get_metric(FLAT)
table = metric.table

base_rho, base_alpha = table.base_point(2, 0.1)
examples = {
    "center": CENTER,
    "interior point": parse_point("-/R+:0.5:0.2", table),
    "base point": parse_point(f"L/R-:{base_rho!r}:{base_alpha!r}", table),
    "corner of P_1": corner(table, "", "R", UPPER),
    "corner of P_5": corner(table, "LRRL", "L", UPPER),
}
for label, p in examples.items():
    w = straddle_witness(metric, p)
    print(f"{label:>15}: {p}")
    print(f"{'':>15}  a = {w.a}")
    print(f"{'':>15}  b = {w.b}")
    print(f"{'':>15}  legs {w.legs[0]:.6f} + {w.legs[1]:.6f}, gap {w.gap:.1e}")

report = extreme_scan(metric, 8, 1000, 42)
print(f"\nscan: {report['corners']} corners and {report['samples']} random points, "
      f"{len(report['failures'])} failures, max gap {report['max_gap']:.1e}")
