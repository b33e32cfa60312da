"""Draw the rose.

The spiral view unfolds each sheet around the center: every triangle is
placed at its angular distance from the root median, to the right for
branches under R and to the left for branches under L.  The dashed circle
has radius pi/sqrt(6).  The petal view shows one petal with its median and
borders.  Files go to the directory given on the command line (default:
current directory).
"""

import sys
from pathlib import Path

from rose import FLAT, HYPERBOLIC, get_table
from rose.render import render_svg

out = Path(sys.argv[1] if len(sys.argv) > 1 else ".")
out.mkdir(parents=True, exist_ok=True)

jobs = [
    ("rose_flat_depth6.svg", FLAT, 6, "spiral"),
    ("rose_flat_depth30.svg", FLAT, 30, "spiral"),
    ("rose_hyperbolic_depth6.svg", HYPERBOLIC, 6, "spiral"),
    ("petal_1.svg", FLAT, 1, "petal"),
    ("petal_4.svg", FLAT, 4, "petal"),
]
for name, kappa, depth, mode in jobs:
    svg = render_svg(get_table(kappa), depth, mode)
    (out / name).write_text(svg)
    print(f"wrote {out / name} ({len(svg)} bytes)")
