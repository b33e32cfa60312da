"""SVG pictures of the rose.

``spiral`` mode unfolds each sheet around the center: the triangle
``(w, side)`` is drawn with its median ray at the signed link distance of
vertex ``w`` and its border ray at that of ``w + side``.  Distances to the
root median grow along every branch, so the picture winds outward from the
vertical axis to the right (branches under ``R``) and to the left (branches
under ``L``).  Siblings land on the same spot, which is the "folded and
pressed flat" view.  The upper sheet opens upward and the lower sheet is its
mirror image.

In the flat case the drawing is an exact isometric unfolding of each
triangle.  Hyperbolic triangles are drawn in geodesic polar coordinates
with straight edges, which keeps radii and angles but not edge shapes.

``petal`` mode draws a single petal chart with its median and borders
labelled.

Output is byte-for-byte deterministic: no timestamps, fixed float format.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .core import SIDES, UPPER, RadiiTable, Sheet, get_table
from .kernel import FLAT, DomainError

MAX_SPIRAL_DEPTH = 50
# beyond this depth siblings are drawn once, tagged with their multiplicity
FULL_SPIRAL_DEPTH = 12

_SHEET_STYLE = {
    "+": 'fill="#4c72b0" fill-opacity="0.18" stroke="#1f3b73"',
    "-": 'fill="#dd8452" fill-opacity="0.18" stroke="#7a3a12"',
}


def _f(x: float) -> str:
    s = f"{x:.8f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _xy(rho: float, angle: float, sheet: Sheet) -> tuple[float, float]:
    # angle is measured from the vertical axis, positive towards the R side
    y = -rho * math.cos(angle)
    return rho * math.sin(angle), (y if sheet is UPPER else -y)


def _points(coords) -> str:
    return " ".join(f"{_f(x)},{_f(y)}" for x, y in coords)


def bounding_radius(table: RadiiTable) -> float:
    if table.curvature is FLAT:
        return math.pi / math.sqrt(6.0)
    from .verify import hyperbolic_radius_bound

    return hyperbolic_radius_bound(table)


def _signed_angle(table: RadiiTable, vertex: str) -> float:
    if not vertex:
        return 0.0
    sign = 1.0 if vertex[0] == "R" else -1.0
    return sign * table.depth(vertex)


def _triangle_coords(table: RadiiTable, addr: str, side: str, sheet: Sheet):
    n = len(addr) + 1
    a0 = _signed_angle(table, addr)
    a1 = _signed_angle(table, addr + side)
    return [(0.0, 0.0), _xy(table.radius(n), a0, sheet), _xy(table.radius(n + 1), a1, sheet)]


def _words(length: int):
    if length == 0:
        yield ""
        return
    for w in _words(length - 1):
        for c in SIDES:
            yield w + c


def _arc(radius: float, a0: float, a1: float) -> str:
    x0, y0 = _xy(radius, a0, UPPER)
    x1, y1 = _xy(radius, a1, UPPER)
    large = 1 if abs(a1 - a0) > math.pi else 0
    return f"M {_f(x0)} {_f(y0)} A {_f(radius)} {_f(radius)} 0 {large} 1 {_f(x1)} {_f(y1)}"


def _header(extent: float, width: int = 800) -> list[str]:
    box = f"{_f(-extent)} {_f(-extent)} {_f(2 * extent)} {_f(2 * extent)}"
    return [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{width}" viewBox="{box}">',
    ]


def spiral_svg(table: RadiiTable, depth: int) -> str:
    if depth < 1:
        raise DomainError("render depth must be >= 1")
    if depth > MAX_SPIRAL_DEPTH:
        raise DomainError(f"spiral depth {depth} exceeds the limit of {MAX_SPIRAL_DEPTH}")
    big_r = bounding_radius(table)
    stroke = 0.002
    out = _header(big_r * 1.15)
    out.append(f'<title>{escape(f"rose, {table.curvature.name.lower()}, spiral to depth {depth}")}</title>')
    out.append(f'<g id="rose" stroke-width="{_f(stroke)}" stroke-linejoin="round">')
    out.append(
        f'<circle id="bound" cx="0" cy="0" r="{big_r:.8f}" fill="none" stroke="#444444" stroke-dasharray="0.02 0.01"/>'
    )
    full = depth <= FULL_SPIRAL_DEPTH
    for sheet in (UPPER, Sheet.LOWER):
        out.append(f'<g class="sheet" data-sheet="{sheet.value}" {_SHEET_STYLE[sheet.value]}>')
        for level in range(1, depth + 1):
            if full:
                words = _words(level - 1)
            else:
                # one representative per placement; siblings share it
                words = [""] if level == 1 else ["L" * (level - 1), "R" * (level - 1)]
            for w in words:
                for side in SIDES:
                    if not full and level > 1 and side != w[0]:
                        continue
                    pts = _points(_triangle_coords(table, w, side, sheet))
                    extra = ""
                    if not full and level > 1:
                        extra = f' data-multiplicity="{2 ** (level - 1)}"'
                    out.append(
                        f'<polygon class="triangle" data-address="{w or "-"}/{side}{sheet.value}"'
                        f' data-level="{level}"{extra} points="{pts}"/>'
                    )
        out.append("</g>")
    # angle annotations for the first two petals
    font = big_r * 0.045
    for k, radius in ((1, 0.25 * big_r), (2, 0.4 * big_r)):
        total = table.theta_sum(1, k)
        label = f"{math.degrees(total):.4f}°"
        out.append(
            f'<path class="angle" data-levels="1-{k}" d="{_arc(radius, 0.0, total)}" fill="none" stroke="#000000"/>'
        )
        lx, ly = _xy(radius + 0.02, 0.5 * total, UPPER)
        out.append(
            f'<text x="{_f(lx)}" y="{_f(ly)}" font-size="{_f(font)}" font-family="sans-serif">{label}</text>'
        )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def petal_svg(table: RadiiTable, level: int) -> str:
    if level < 1:
        raise DomainError("petal level must be >= 1")
    r = table.radius(level)
    hb = table.half_base(level)
    extent = max(r, hb) * 1.3
    font = extent * 0.05
    out = _header(extent)
    out.append(f'<title>{escape(f"petal P_{level}, {table.curvature.name.lower()}")}</title>')
    out.append(f'<g id="petal" data-level="{level}" stroke-width="{_f(extent * 0.004)}">')
    # chart: median along the y axis, base segments at |y| = r
    for sheet, sy in ((UPPER, -1.0), (Sheet.LOWER, 1.0)):
        for side, sx in (("L", -1.0), ("R", 1.0)):
            pts = [(0.0, 0.0), (0.0, sy * r), (sx * hb, sy * r)]
            out.append(
                f'<polygon class="triangle" data-side="{side}" data-sheet="{sheet.value}" '
                f'{_SHEET_STYLE[sheet.value]} points="{_points(pts)}"/>'
            )
    out.append(f'<line class="median" x1="0" y1="{_f(-r)}" x2="0" y2="{_f(r)}" stroke="#000000"/>')
    out.append(
        f'<text x="{_f(font * 0.3)}" y="{_f(-0.5 * r)}" font-size="{_f(font)}" font-family="sans-serif">'
        f"median {_f(2 * r)}</text>"
    )
    r_next = table.radius(level + 1)
    for sheet, sy in ((UPPER, -1.0), (Sheet.LOWER, 1.0)):
        for side, sx in (("L", -1.0), ("R", 1.0)):
            out.append(
                f'<line class="border" data-side="{side}" data-sheet="{sheet.value}" x1="0" y1="0" '
                f'x2="{_f(sx * hb)}" y2="{_f(sy * r)}" stroke="#aa0000"/>'
            )
    out.append(
        f'<text x="{_f(hb * 0.6)}" y="{_f(-0.75 * r)}" font-size="{_f(font)}" font-family="sans-serif" '
        f'fill="#aa0000">border {_f(r_next)}</text>'
    )
    out.append(
        f'<text x="{_f(-hb)}" y="{_f(-r - font)}" font-size="{_f(font)}" font-family="sans-serif">'
        f"base half-length {_f(hb)}</text>"
    )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(table: RadiiTable | None = None, depth: int = 6, mode: str = "spiral") -> str:
    """SVG document for ``mode`` in {"spiral", "petal"}."""
    table = table or get_table(FLAT)
    if mode == "spiral":
        return spiral_svg(table, depth)
    if mode == "petal":
        return petal_svg(table, depth)
    raise DomainError(f"unknown render mode {mode!r}")
