"""Distances, geodesics and angles on the rose.

Each sheet of the rose is a convex subset of the cone (flat or hyperbolic)
over its link tree, and the two sheets meet only at the center.  So the
distance between two points of one sheet is the law of cosines applied to
their radii and to the tree distance between their directions, saturated at
``pi``; points of different sheets are joined through the center.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .core import (
    CENTER,
    DirectionLocus,
    RadiiTable,
    RosePoint,
    canonicalize,
    direction_of,
    get_table,
    vertex_point,
)
from .kernel import DISJOINT, FLAT, Curvature, DomainError, cone_distance, geodesic_radius_at


class ArcSegment(NamedTuple):
    """A piece of a link-tree path lying on the single arc ``(addr, side)``."""

    addr: str
    side: str
    start: float  # offset from vertex addr where the piece begins
    end: float
    gamma0: float  # cumulative angle at the beginning of the piece
    gamma1: float

    @property
    def end_vertex(self) -> str:
        return self.addr if self.end < self.start else self.addr + self.side


@dataclass(frozen=True)
class GeodesicPath:
    points: tuple[RosePoint, ...]
    through_center: bool
    length: float


def _common_prefix(a: str, b: str) -> int:
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k


class RoseMetric:
    """Metric engine bound to one :class:`RadiiTable`."""

    def __init__(self, table: RadiiTable | None = None):
        self.table = table or get_table(FLAT)

    @property
    def curvature(self) -> Curvature:
        return self.table.curvature

    def __repr__(self) -> str:
        return f"RoseMetric({self.curvature.name})"

    # -- link tree ---------------------------------------------------------

    def tree_path(self, d1: DirectionLocus, d2: DirectionLocus) -> list[ArcSegment]:
        """Arc pieces of the link-tree path from ``d1`` to ``d2`` (same sheet).

        Zero-length pieces are dropped, so every joint between two pieces is
        a tree vertex strictly inside the path.
        """
        th = self.table.theta
        c1, c2 = d1.addr + d1.side, d2.addr + d2.side
        raw: list[tuple[str, str, float, float]] = []
        if c1 == c2:
            raw.append((d1.addr, d1.side, d1.offset, d2.offset))
        else:
            k = _common_prefix(c1, c2)
            if k == len(c1):
                # d2 lies below the far end of d1's arc
                raw.append((d1.addr, d1.side, d1.offset, th(len(c1))))
                for j in range(len(c1) + 1, len(c2)):
                    raw.append((c2[: j - 1], c2[j - 1], 0.0, th(j)))
                raw.append((d2.addr, d2.side, 0.0, d2.offset))
            elif k == len(c2):
                raw.append((d1.addr, d1.side, d1.offset, 0.0))
                for j in range(len(c1) - 1, len(c2), -1):
                    raw.append((c1[: j - 1], c1[j - 1], th(j), 0.0))
                raw.append((d2.addr, d2.side, th(len(c2)), d2.offset))
            else:
                raw.append((d1.addr, d1.side, d1.offset, 0.0))
                for j in range(len(c1) - 1, k, -1):
                    raw.append((c1[: j - 1], c1[j - 1], th(j), 0.0))
                for j in range(k + 1, len(c2)):
                    raw.append((c2[: j - 1], c2[j - 1], 0.0, th(j)))
                raw.append((d2.addr, d2.side, 0.0, d2.offset))
        segments = []
        gamma = 0.0
        for addr, side, a, b in raw:
            if a == b:
                continue
            g1 = gamma + abs(b - a)
            segments.append(ArcSegment(addr, side, a, b, gamma, g1))
            gamma = g1
        return segments

    def angular_distance(self, d1: DirectionLocus, d2: DirectionLocus):
        """Tree distance between two directions, or ``DISJOINT`` across sheets."""
        if d1.sheet is not d2.sheet:
            return DISJOINT
        path = self.tree_path(d1, d2)
        return path[-1].gamma1 if path else 0.0

    def _phi(self, p: RosePoint, q: RosePoint):
        if p.is_center or q.is_center:
            return DISJOINT
        # fixed argument order keeps the float sum, hence d, exactly symmetric
        if (p.addr, p.side, p.alpha) > (q.addr, q.side, q.alpha):
            p, q = q, p
        return self.angular_distance(direction_of(p), direction_of(q))

    # -- metric ------------------------------------------------------------

    def distance(self, p: RosePoint, q: RosePoint) -> float:
        if p.is_center:
            return q.rho
        if q.is_center:
            return p.rho
        return cone_distance(self.curvature, p.rho, q.rho, self._phi(p, q))

    def center_angle(self, p: RosePoint, q: RosePoint) -> float:
        """Alexandrov angle at the center between ``p`` and ``q``, in ``[0, pi]``."""
        if p.is_center or q.is_center:
            raise DomainError("angle at the center is undefined for the center itself")
        phi = self._phi(p, q)
        return math.pi if phi is DISJOINT else min(phi, math.pi)

    def geodesic(self, p: RosePoint, q: RosePoint) -> GeodesicPath:
        """Breakpoints of the geodesic ``[p, q]``.

        A breakpoint is recorded at every link-tree vertex crossed, even where
        the path happens to be straight across it.
        """
        if p == q:
            return GeodesicPath((p,), False, 0.0)
        phi = self._phi(p, q)
        length = self.distance(p, q)
        if phi is DISJOINT or phi >= math.pi:
            pts = (p, q) if p.is_center or q.is_center else (p, CENTER, q)
            return GeodesicPath(pts, True, length)
        if phi == 0.0:
            return GeodesicPath((p, q), False, length)
        path = self.tree_path(direction_of(p), direction_of(q))
        pts = [p]
        for seg in path[:-1]:
            r = geodesic_radius_at(self.curvature, p.rho, q.rho, phi, seg.gamma1)
            pts.append(vertex_point(self.table, seg.end_vertex, p.sheet, r))
        pts.append(q)
        return GeodesicPath(tuple(pts), False, length)

    def _model_point(self, rho1: float, rho2: float, phi: float, d: float, t: float) -> tuple[float, float]:
        """Radius and angle of the point at fraction ``t`` of the model geodesic."""
        if self.curvature is FLAT:
            x = (1.0 - t) * rho1 + t * rho2 * math.cos(phi)
            y = t * rho2 * math.sin(phi)
            return math.hypot(x, y), math.atan2(y, x)
        # hyperboloid model: p = (cosh, sinh, 0), q = (cosh, sinh cos, sinh sin)
        a = math.sinh((1.0 - t) * d) / math.sinh(d)
        b = math.sinh(t * d) / math.sinh(d)
        x = a * math.sinh(rho1) + b * math.sinh(rho2) * math.cos(phi)
        y = b * math.sinh(rho2) * math.sin(phi)
        return math.asinh(math.hypot(x, y)), math.atan2(y, x)

    def interpolate(self, p: RosePoint, q: RosePoint, t: float) -> RosePoint:
        """Point of ``[p, q]`` at distance ``t * d(p, q)`` from ``p``."""
        if not 0.0 <= t <= 1.0:
            raise DomainError(f"t must lie in [0, 1], got {t}")
        if t == 0.0 or p == q:
            return p
        if t == 1.0:
            return q
        phi = self._phi(p, q)
        d = self.distance(p, q)
        if phi is DISJOINT or phi >= math.pi:
            s = t * d
            if s < p.rho:
                return RosePoint(p.addr, p.side, p.sheet, p.rho - s, p.alpha)
            if s == p.rho:
                return CENTER
            return RosePoint(q.addr, q.side, q.sheet, min(s - p.rho, q.rho), q.alpha)
        if phi == 0.0:
            return RosePoint(p.addr, p.side, p.sheet, p.rho + t * (q.rho - p.rho), p.alpha)
        rho, gamma = self._model_point(p.rho, q.rho, phi, d, t)
        gamma = min(max(gamma, 0.0), phi)
        path = self.tree_path(direction_of(p), direction_of(q))
        seg = path[-1]
        for s in path:
            if gamma <= s.gamma1:
                seg = s
                break
        step = gamma - seg.gamma0
        offset = seg.start + step if seg.end > seg.start else seg.start - step
        lo, hi = min(seg.start, seg.end), max(seg.start, seg.end)
        offset = min(max(offset, lo), hi)
        return canonicalize(RosePoint(seg.addr, seg.side, p.sheet, rho, offset), self.table)

    def midpoint(self, p: RosePoint, q: RosePoint) -> RosePoint:
        return self.interpolate(p, q, 0.5)

    def through_center_level(self, m: int, target: float) -> int:
        """Least ``M`` with ``theta_{m+1} + ... + theta_{M-1} >= target``."""
        if m < 1:
            raise DomainError(f"m must be >= 1, got {m}")
        big_m = m + 1
        while self.table.theta_sum(m + 1, big_m - 1) < target:
            big_m += 1
        return big_m


@lru_cache(maxsize=None)
def get_metric(curvature: Curvature = FLAT) -> RoseMetric:
    return RoseMetric(get_table(curvature))
