"""Combinatorial model of the rose.

Petals are addressed by words over ``{L, R}``: the empty word is the root
petal ``P_1`` and the petal ``w + c`` is glued by its central segment onto
the ``c`` border of petal ``w``.  A petal of address ``w`` has level
``len(w) + 1`` and is cut by its median into four right triangles, one per
(side, sheet) pair.  Every triangle has its right angle at the median foot,
legs ``r_n`` (median) and ``1/(n+1)`` (half base), and apex angle
``theta_n`` at the center.

A point away from the center is stored in polar coordinates inside one
triangle: ``rho`` is the distance to the center and ``alpha`` the angle
measured from the median towards the border.  Gluings are sheet preserving,
so the upper halves of all petals form one sheet and the lower halves
another; the sheets meet only at the center.
"""

from __future__ import annotations

import enum
import math
import re
import threading
from dataclasses import dataclass, replace
from functools import lru_cache

from .kernel import FLAT, Curvature, DomainError, apex_angle, boundary_radius, hypotenuse

SIDES = ("L", "R")
REL_TOL = 1e-12


def flip(letter: str) -> str:
    return "R" if letter == "L" else "L"


class Sheet(enum.Enum):
    UPPER = "+"
    LOWER = "-"

    @property
    def other(self) -> "Sheet":
        return Sheet.LOWER if self is Sheet.UPPER else Sheet.UPPER


UPPER = Sheet.UPPER
LOWER = Sheet.LOWER


class RadiiTable:
    """Lazily extended tables of petal radii and apex angles.

    Flat: ``r_n = sqrt(sum_{p<=n} 1/p^2)``.  Hyperbolic: ``s_1 = 1`` and
    ``s_{n+1}`` is the hypotenuse of the right triangle with legs ``s_n``
    and ``1/(n+1)``.  Index 0 of every list is padding so that ``n`` maps to
    position ``n``.

    Extension happens under a lock and only appends, so concurrent readers
    never see a partially written entry.
    """

    def __init__(self, curvature: Curvature = FLAT):
        self.curvature = curvature
        self._radii = [0.0, 1.0]
        self._thetas = [0.0]
        self._prefix = [0.0]
        # compensated running sum of 1/p^2 (flat only)
        self._sq_sum = 1.0
        self._sq_comp = 0.0
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"RadiiTable({self.curvature.name}, filled={len(self._radii) - 1})"

    def _extend(self, n: int) -> None:
        with self._lock:
            radii, thetas, prefix = self._radii, self._thetas, self._prefix
            while len(radii) <= n:
                k = len(radii)  # next index to fill
                if self.curvature is FLAT:
                    term = 1.0 / (k * k)
                    t = self._sq_sum + term
                    if abs(self._sq_sum) >= term:
                        self._sq_comp += (self._sq_sum - t) + term
                    else:
                        self._sq_comp += (term - t) + self._sq_sum
                    self._sq_sum = t
                    radii.append(math.sqrt(t + self._sq_comp))
                else:
                    radii.append(hypotenuse(self.curvature, radii[k - 1], 1.0 / k))
            while len(thetas) <= n:
                k = len(thetas)
                th = apex_angle(self.curvature, radii[k], 1.0 / (k + 1))
                thetas.append(th)
                prefix.append(prefix[k - 1] + th)

    def radius(self, n: int) -> float:
        """Median length of petal level ``n`` (the petal's distance to its base)."""
        if n < 1:
            raise DomainError(f"petal level must be >= 1, got {n}")
        if n >= len(self._radii):
            self._extend(n)
        return self._radii[n]

    def theta(self, n: int) -> float:
        """Apex angle between the median and a border of petal level ``n``."""
        if n < 1:
            raise DomainError(f"petal level must be >= 1, got {n}")
        if n >= len(self._thetas):
            self._extend(n + 1)
        return self._thetas[n]

    def theta_sum(self, start: int, stop: int) -> float:
        """Sum of ``theta_k`` for ``start <= k <= stop``; zero when empty."""
        if start < 1:
            raise DomainError(f"start must be >= 1, got {start}")
        if stop < start:
            return 0.0
        if stop >= len(self._prefix):
            self._extend(stop + 1)
        if stop == start:
            return self._thetas[start]
        return self._prefix[stop] - self._prefix[start - 1]

    def depth(self, addr: str) -> float:
        """Link-tree distance from the root median direction to vertex ``addr``."""
        return self.theta_sum(1, len(addr))

    @staticmethod
    def half_base(n: int) -> float:
        return 1.0 / (n + 1)

    def boundary(self, n: int, alpha: float) -> float:
        """Radial extent of a level-``n`` triangle in direction ``alpha``."""
        if alpha == self.theta(n):
            # the border is the next petal's median; use its tabulated length
            return self.radius(n + 1)
        return boundary_radius(self.curvature, self.radius(n), alpha)

    def base_point(self, n: int, u: float) -> tuple[float, float]:
        """Polar coordinates of the base point at distance ``u`` from the median foot."""
        r = self.radius(n)
        if u == 0.0:
            return r, 0.0
        return hypotenuse(self.curvature, r, u), apex_angle(self.curvature, r, u)

    def base_offset(self, n: int, alpha: float) -> float:
        """Inverse of :meth:`base_point`: base position seen under angle ``alpha``."""
        r = self.radius(n)
        if self.curvature is FLAT:
            return r * math.tan(alpha)
        return math.atanh(math.tan(alpha) * math.sinh(r))


@lru_cache(maxsize=None)
def get_table(curvature: Curvature = FLAT) -> RadiiTable:
    """Shared table for ``curvature``."""
    return RadiiTable(curvature)


@dataclass(frozen=True)
class TriangleId:
    addr: str
    side: str
    sheet: Sheet

    @property
    def level(self) -> int:
        return len(self.addr) + 1


@dataclass(frozen=True)
class RosePoint:
    """A point of the rose; build canonical instances with :func:`canonicalize`."""

    addr: str
    side: str
    sheet: Sheet
    rho: float
    alpha: float

    @property
    def is_center(self) -> bool:
        return self.rho == 0.0

    @property
    def level(self) -> int:
        return len(self.addr) + 1

    @property
    def triangle(self) -> TriangleId:
        return TriangleId(self.addr, self.side, self.sheet)

    def __str__(self) -> str:
        return format_point(self)


CENTER = RosePoint("", "R", UPPER, 0.0, 0.0)


@dataclass(frozen=True)
class DirectionLocus:
    """A direction at the center: a position on the link tree of one sheet.

    The arc ``(addr, side)`` joins tree vertex ``addr`` to vertex
    ``addr + side`` and has length ``theta_{len(addr)+1}``; ``offset`` is
    measured from ``addr``.
    """

    sheet: Sheet
    addr: str
    side: str
    offset: float


def _check_word(addr: str) -> None:
    if any(c not in SIDES for c in addr):
        raise DomainError(f"petal address must be a word over L/R, got {addr!r}")


def canonicalize(p: RosePoint, table: RadiiTable | None = None) -> RosePoint:
    """Return the unique canonical representative of ``p``.

    Medians of non-root petals are re-expressed on the parent's border, the
    root median is put on side ``R``, and ``rho == 0`` collapses to
    :data:`CENTER`.  Coordinates within ``REL_TOL`` of the triangle boundary
    are snapped onto it.
    """
    table = table or get_table()
    _check_word(p.addr)
    if p.side not in SIDES:
        raise DomainError(f"side must be L or R, got {p.side!r}")
    if not isinstance(p.sheet, Sheet):
        raise DomainError(f"sheet must be a Sheet, got {p.sheet!r}")
    rho, alpha = float(p.rho), float(p.alpha)
    if not (math.isfinite(rho) and math.isfinite(alpha)):
        raise DomainError("coordinates must be finite")
    if rho < 0.0:
        raise DomainError(f"rho must be non-negative, got {rho}")
    if rho == 0.0:
        return CENTER
    n = p.level
    th = table.theta(n)
    if alpha < 0.0:
        if alpha < -REL_TOL:
            raise DomainError(f"alpha {alpha} is negative")
        alpha = 0.0
    elif alpha > th:
        if alpha > th + REL_TOL:
            raise DomainError(f"alpha {alpha} exceeds theta_{n} = {th}")
        alpha = th
    rmax = table.boundary(n, alpha)
    if rho > rmax:
        if rho > rmax * (1.0 + REL_TOL):
            raise DomainError(f"rho {rho} exceeds the triangle boundary {rmax} at alpha {alpha}")
        rho = rmax
    addr, side = p.addr, p.side
    if alpha == 0.0:
        if addr:
            # median of a child petal == border of its parent
            addr, side = addr[:-1], addr[-1]
            alpha = table.theta(len(addr) + 1)
            rho = min(rho, table.radius(len(addr) + 2))
        else:
            side = "R"
    return RosePoint(addr, side, p.sheet, rho, alpha)


def make_point(table: RadiiTable, addr: str, side: str, sheet: Sheet, rho: float, alpha: float) -> RosePoint:
    """Shorthand for ``canonicalize(RosePoint(...), table)``."""
    return canonicalize(RosePoint(addr, side, sheet, rho, alpha), table)


def level_of(p: RosePoint) -> int:
    """Smallest level of a petal containing ``p`` (1 for the center)."""
    return p.level


def direction_of(p: RosePoint) -> DirectionLocus:
    if p.is_center:
        raise DomainError("the center has no direction")
    return DirectionLocus(p.sheet, p.addr, p.side, p.alpha)


def corner(table: RadiiTable, addr: str, side: str, sheet: Sheet) -> RosePoint:
    """Outer corner of petal ``addr`` on the given side and sheet."""
    n = len(addr) + 1
    return RosePoint(addr, side, sheet, table.radius(n + 1), table.theta(n))


def vertex_point(table: RadiiTable, vertex: str, sheet: Sheet, rho: float) -> RosePoint:
    """Canonical point at radius ``rho`` in the direction of link-tree vertex ``vertex``."""
    if rho <= 0.0:
        return CENTER
    if not vertex:
        return RosePoint("", "R", sheet, min(rho, table.radius(1)), 0.0)
    n = len(vertex)
    return RosePoint(vertex[:-1], vertex[-1], sheet, min(rho, table.radius(n + 1)), table.theta(n))


# --- point literals -------------------------------------------------------

class PointParseError(ValueError):
    """Malformed point literal; ``position`` is the 0-based column of the fault."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


_NUMBER = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")


def parse_point(text: str, table: RadiiTable | None = None) -> RosePoint:
    """Parse ``center`` or ``<addr>/<side><sheet>:<rho>:<alpha>``.

    ``addr`` is ``-`` for the root petal, otherwise a word over ``L``/``R``;
    ``sheet`` is ``+`` (upper) or ``-`` (lower).
    """
    table = table or get_table()
    if text == "center":
        return CENTER
    pos = 0
    if text.startswith("-"):
        addr = ""
        pos = 1
    else:
        while pos < len(text) and text[pos] in SIDES:
            pos += 1
        if pos == 0:
            raise PointParseError("expected 'center', '-' or a word over L/R", text, 0)
        addr = text[:pos]
    if pos >= len(text) or text[pos] != "/":
        raise PointParseError("expected '/'", text, pos)
    pos += 1
    if pos >= len(text) or text[pos] not in SIDES:
        raise PointParseError("expected side L or R", text, pos)
    side = text[pos]
    pos += 1
    if pos >= len(text) or text[pos] not in "+-":
        raise PointParseError("expected sheet '+' or '-'", text, pos)
    sheet = Sheet(text[pos])
    pos += 1
    coords = []
    for name in ("rho", "alpha"):
        if pos >= len(text) or text[pos] != ":":
            raise PointParseError(f"expected ':' before {name}", text, pos)
        pos += 1
        m = _NUMBER.match(text, pos)
        if m is None:
            raise PointParseError(f"expected a decimal {name}", text, pos)
        coords.append((float(m.group()), pos))
        pos = m.end()
    if pos != len(text):
        raise PointParseError("unexpected trailing characters", text, pos)
    (rho, rho_pos), (alpha, _) = coords
    try:
        return canonicalize(RosePoint(addr, side, sheet, rho, alpha), table)
    except DomainError as exc:
        raise PointParseError(str(exc), text, rho_pos) from None


def format_point(p: RosePoint) -> str:
    """Inverse of :func:`parse_point`; floats use the shortest round-trip form."""
    if p.is_center:
        return "center"
    return f"{p.addr or '-'}/{p.side}{p.sheet.value}:{p.rho!r}:{p.alpha!r}"


def with_sheet(p: RosePoint, sheet: Sheet) -> RosePoint:
    return p if p.is_center else replace(p, sheet=sheet)
