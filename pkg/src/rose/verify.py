"""Constructive checks of the rose's properties.

Each ``*_suite`` / ``*_scan`` / ``*_report`` function is deterministic for a
given seed and returns a plain dict with at least ``name``, ``pass`` and
``max_err`` keys, ready to be serialized as JSON.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

from .core import (
    CENTER,
    LOWER,
    SIDES,
    UPPER,
    RadiiTable,
    RosePoint,
    Sheet,
    canonicalize,
    corner,
    flip,
    format_point,
    make_point,
)
from .kernel import FLAT, DomainError, comparison_angle, cone_distance
from .metric import RoseMetric

WITNESS_TOL = 1e-10
CAT_SLACK = 1e-9
ISOMETRY_TOL = 1e-12


# --- sampling ---------------------------------------------------------------

def random_word(rng: random.Random, length: int) -> str:
    return "".join(rng.choice(SIDES) for _ in range(length))


def random_point(
    rng: random.Random,
    table: RadiiTable,
    max_level: int,
    *,
    level: int | None = None,
    prefix: str = "",
    sheet: Sheet | None = None,
    special: bool = True,
) -> RosePoint:
    """Random canonical point of level at most ``max_level``.

    With ``special`` set, about a third of the draws land on a distinguished
    locus (center, median, border, base, corner) so that canonicalization
    and boundary handling get exercised.
    """
    n = level if level is not None else rng.randint(max(1, len(prefix) + 1), max_level)
    addr = prefix + random_word(rng, n - 1 - len(prefix))
    side = rng.choice(SIDES)
    sheet = sheet or rng.choice((UPPER, LOWER))
    th = table.theta(n)
    alpha = rng.uniform(0.0, th)
    u = rng.random()
    kind = rng.random() if special else 1.0
    if kind < 0.03 and not prefix:
        return CENTER
    if kind < 0.08:
        return canonicalize(corner(table, addr, side, sheet), table)
    if kind < 0.14:
        alpha = th
    elif kind < 0.20:
        alpha = 0.0
    if 0.11 <= kind < 0.14 or 0.17 <= kind < 0.28:
        u = 1.0
    rho = max(u, 1e-6) * table.boundary(n, alpha)
    return make_point(table, addr, side, sheet, rho, alpha)


# --- extreme points ---------------------------------------------------------

@dataclass(frozen=True)
class StraddleWitness:
    """Points ``a``, ``b`` with ``p`` strictly inside the geodesic ``[a, b]``."""

    a: RosePoint
    b: RosePoint
    p: RosePoint
    gap: float
    legs: tuple[float, float]

    def as_dict(self) -> dict:
        return {
            "a": format_point(self.a),
            "b": format_point(self.b),
            "p": format_point(self.p),
            "gap": self.gap,
            "legs": list(self.legs),
        }


def on_base(table: RadiiTable, p: RosePoint) -> bool:
    if p.is_center:
        return False
    return p.rho >= table.boundary(p.level, p.alpha) * (1.0 - 1e-12)


def straddle_witness(metric: RoseMetric, p: RosePoint, corner_delta: float = 0.1) -> StraddleWitness:
    """Exhibit a geodesic segment having ``p`` in its interior."""
    table = metric.table
    if p.is_center:
        a = make_point(table, "", "R", UPPER, 1.0, 0.0)
        b = make_point(table, "", "R", LOWER, 1.0, 0.0)
    else:
        n = p.level
        th = table.theta(n)
        if not on_base(table, p):
            # radial segment from the center out to the base
            a = CENTER
            b = make_point(table, p.addr, p.side, p.sheet, table.boundary(n, p.alpha), p.alpha)
        elif p.alpha < th:
            # slide along the base of the same petal
            hb = table.half_base(n)
            u = min(table.base_offset(n, p.alpha), hb)
            delta = 0.5 * (hb - u)
            lo, hi = u - delta, u + delta
            a = make_point(table, p.addr, p.side if lo >= 0 else flip(p.side), p.sheet, *table.base_point(n, abs(lo)))
            b = make_point(table, p.addr, p.side, p.sheet, *table.base_point(n, hi))
        else:
            # outer corner: it is the median foot of the child petal
            child = p.addr + p.side
            delta = min(0.5 * table.theta(n + 1), corner_delta)
            rho = table.boundary(n + 1, delta)
            a = make_point(table, child, "L", p.sheet, rho, delta)
            b = make_point(table, child, "R", p.sheet, rho, delta)
    dap, dpb = metric.distance(a, p), metric.distance(p, b)
    gap = dap + dpb - metric.distance(a, b)
    return StraddleWitness(a, b, p, gap, (dap, dpb))


def all_corners(table: RadiiTable, depth: int) -> Iterator[RosePoint]:
    for n in range(1, depth + 1):
        for word in itertools.product(SIDES, repeat=n - 1):
            addr = "".join(word)
            for side in SIDES:
                for sheet in (UPPER, LOWER):
                    yield canonicalize(corner(table, addr, side, sheet), table)


def check_witness(metric: RoseMetric, w: StraddleWitness, tol: float = WITNESS_TOL) -> tuple[bool, float]:
    """Validate a witness; returns ``(ok, interpolation error)``."""
    if w.a == w.p or w.b == w.p:
        return False, math.inf
    if max(w.a.level, w.b.level) > w.p.level + 1:
        return False, math.inf
    dab = metric.distance(w.a, w.b)
    m = metric.interpolate(w.a, w.b, w.legs[0] / dab)
    err = metric.distance(m, w.p)
    ok = w.gap <= tol and min(w.legs) > 0.0 and err <= 1e-9
    return ok, err


def extreme_scan(metric: RoseMetric, depth: int, samples: int, seed: int) -> dict:
    """Witness every outer corner up to ``depth`` plus ``samples`` random points."""
    if depth < 1:
        raise DomainError("depth must be >= 1")
    rng = random.Random(seed)
    points = list(all_corners(metric.table, depth))
    n_corners = len(points)
    points += [random_point(rng, metric.table, depth) for _ in range(samples)]
    failures = []
    max_gap = 0.0
    max_interp = 0.0
    min_leg = math.inf
    for p in points:
        w = straddle_witness(metric, p)
        ok, err = check_witness(metric, w)
        max_gap = max(max_gap, w.gap)
        max_interp = max(max_interp, err)
        min_leg = min(min_leg, *w.legs)
        if not ok:
            failures.append(w.as_dict())
    return {
        "name": "extreme",
        "pass": not failures,
        "max_err": max_gap,
        "corners": n_corners,
        "samples": samples,
        "max_gap": max_gap,
        "max_interpolation_error": max_interp,
        "min_leg": min_leg,
        "failures": failures,
    }


# --- CAT(kappa) comparison --------------------------------------------------

def comparison_bound(kappa, dpq: float, dpr: float, dqr: float, t: float) -> float:
    """Model-plane distance from ``r`` to the point at fraction ``t`` of ``[p, q]``."""
    if dpq == 0.0:
        return dpr
    if dpr == 0.0:
        return t * dpq
    angle = comparison_angle(kappa, dqr, dpq, dpr)
    return cone_distance(kappa, t * dpq, dpr, angle)


def cat_comparison_suite(
    metric: RoseMetric, triples: int, depth: int, seed: int, grid: int = 9, slack: float = CAT_SLACK
) -> dict:
    rng = random.Random(seed)
    kappa = metric.curvature
    ts = [k / (grid - 1) for k in range(grid)]
    violations = []
    worst = -math.inf
    for _ in range(triples):
        p, q, r = (random_point(rng, metric.table, depth) for _ in range(3))
        dpq, dpr, dqr = metric.distance(p, q), metric.distance(p, r), metric.distance(q, r)
        for t in ts:
            m = metric.interpolate(p, q, t)
            excess = metric.distance(m, r) - comparison_bound(kappa, dpq, dpr, dqr, t)
            worst = max(worst, excess)
            if excess > slack:
                violations.append({"p": format_point(p), "q": format_point(q), "r": format_point(r), "t": t, "excess": excess})
    return {
        "name": f"cat_{kappa.name.lower()}",
        "pass": not violations,
        "max_err": max(worst, 0.0),
        "triples": triples,
        "max_excess": worst,
        "violations": violations,
    }


# --- through-center behaviour ----------------------------------------------

def through_center_suite(metric: RoseMetric, pairs: int, seed: int, extra_depth: int = 10) -> dict:
    """Pairs (level-1 point, deep point of the same sheet) must pass through the center."""
    rng = random.Random(seed)
    table = metric.table
    big_m = metric.through_center_level(1, math.pi)
    failures = []
    max_err = 0.0
    for _ in range(pairs):
        p = random_point(rng, table, 1, level=1, special=False)
        level = rng.randint(big_m, big_m + extra_depth)
        q = random_point(rng, table, level, level=level, prefix=rng.choice(SIDES), sheet=p.sheet, special=False)
        path = metric.geodesic(p, q)
        d = metric.distance(p, q)
        err = abs(d - (p.rho + q.rho))
        max_err = max(max_err, err)
        if not path.through_center or d != p.rho + q.rho:
            failures.append({"p": format_point(p), "q": format_point(q), "d": d})
    return {"name": "through_center", "pass": not failures, "max_err": max_err, "M": big_m, "failures": failures}


def separation_law_suite(metric: RoseMetric, samples: int, seed: int, depth: int = 12, eps: float = 0.1) -> dict:
    """Angle at least pi/3 at the center and radii at least ``eps`` force distance at least ``eps``."""
    rng = random.Random(seed)
    applicable = 0
    failures = []
    worst = -math.inf
    while applicable < samples:
        p = random_point(rng, metric.table, depth, special=False)
        q = random_point(rng, metric.table, depth, special=False)
        if min(p.rho, q.rho) < eps or metric.center_angle(p, q) < math.pi / 3:
            continue
        applicable += 1
        shortfall = eps - metric.distance(p, q)
        worst = max(worst, shortfall)
        if shortfall > 0:
            failures.append({"p": format_point(p), "q": format_point(q)})
    return {"name": "pi_over_3", "pass": not failures, "max_err": max(worst, 0.0), "samples": applicable, "failures": failures}


def alexandrov_suite(metric: RoseMetric, samples: int, seed: int, depth: int = 12, tol: float = 1e-5) -> dict:
    """The link-tree angle agrees with the comparison angle at the center."""
    rng = random.Random(seed)
    max_err = 0.0
    for _ in range(samples):
        p = random_point(rng, metric.table, depth, special=False)
        q = random_point(rng, metric.table, depth, special=False)
        model = comparison_angle(metric.curvature, metric.distance(p, q), p.rho, q.rho)
        max_err = max(max_err, abs(model - metric.center_angle(p, q)))
    return {"name": "alexandrov_angle", "pass": max_err <= tol, "max_err": max_err, "samples": samples}


# --- separation covers ------------------------------------------------------

@dataclass(frozen=True)
class SeparationCover:
    """Truncation ``K`` (petals of level <= depth) and the subtrees ``W_i``.

    ``W`` lists the root addresses of the subtrees: all words of length
    ``depth``, so ``W_i`` is the union of petal ``W[i]`` and its
    descendants, together with the center.
    """

    depth: int
    table: RadiiTable = field(repr=False, compare=False)

    @property
    def W(self) -> tuple[str, ...]:
        return tuple("".join(w) for w in itertools.product(SIDES, repeat=self.depth))

    def in_K(self, z: RosePoint) -> bool:
        return z.is_center or z.level <= self.depth

    def component_of(self, z: RosePoint) -> str | None:
        """Root address of the subtree containing ``z``; ``None`` if none (or the center)."""
        if z.is_center:
            return None
        if len(z.addr) >= self.depth:
            return z.addr[: self.depth]
        on_border = z.alpha == self.table.theta(z.level)
        if on_border and len(z.addr) + 1 == self.depth:
            return z.addr + z.side
        return None

    def in_W(self, root: str, z: RosePoint) -> bool:
        return z.is_center or self.component_of(z) == root

    def as_dict(self, list_components: bool = True) -> dict:
        out = {"n": self.depth, "K": {"max_level": self.depth}, "W_count": 2 ** self.depth}
        if list_components:
            out["W"] = list(self.W)
        return out


def separation_cover(table: RadiiTable, x: RosePoint, y: RosePoint) -> tuple[SeparationCover, RosePoint, RosePoint]:
    """Cover for separating ``y`` from ``x``; returns the cover and the (possibly swapped) pair."""
    if x == y:
        raise DomainError("separation needs distinct points")
    if y.is_center:
        x, y = y, x
    return SeparationCover(max(x.level, y.level) + 1, table), x, y


def separation_suite(metric: RoseMetric, pairs: int, seed: int, depth: int = 6,
                     cover_samples: int = 1000, geodesics: int = 100) -> dict:
    rng = random.Random(seed)
    table = metric.table
    failures = []
    covers = []
    for _ in range(pairs):
        x = random_point(rng, table, depth)
        y = random_point(rng, table, depth)
        if x == y:
            continue
        cover, x, y = separation_cover(table, x, y)
        covers.append(cover)
        if len(cover.W) != 2 ** cover.depth or cover.depth != max(x.level, y.level) + 1:
            failures.append({"check": "shape", "x": format_point(x), "y": format_point(y)})
        if any(cover.in_W(w, y) for w in cover.W):
            failures.append({"check": "y_in_W", "x": format_point(x), "y": format_point(y)})
    uncovered = 0
    for k in range(cover_samples):
        cover = covers[k % len(covers)]
        z = random_point(rng, table, cover.depth + 3)
        if not (cover.in_K(z) or cover.component_of(z) is not None):
            uncovered += 1
    escapes = 0
    for k in range(geodesics):
        cover = covers[k % len(covers)]
        root = random_word(rng, cover.depth)
        sheet = rng.choice((UPPER, LOWER))
        top = cover.depth + 4
        # points of W_root: petal root and below, or the median of petal root
        a = random_point(rng, table, top, prefix=root, sheet=sheet)
        b = random_point(rng, table, top, prefix=root, sheet=rng.choice((UPPER, LOWER)))
        for bp in metric.geodesic(a, b).points:
            if not cover.in_W(root, bp):
                escapes += 1
                failures.append({"check": "convexity", "a": format_point(a), "b": format_point(b), "point": format_point(bp)})
                break
    ok = not failures and uncovered == 0
    return {
        "name": "separation",
        "pass": ok,
        "max_err": float(uncovered + escapes),
        "pairs": len(covers),
        "uncovered": uncovered,
        "geodesic_escapes": escapes,
        "failures": failures,
    }


# --- isometries -------------------------------------------------------------

_ELEMENTS = {"e": (0, 0), "h": (1, 0), "v": (0, 1), "hv": (1, 1)}
_NAMES = {bits: name for name, bits in _ELEMENTS.items()}


@dataclass(frozen=True)
class IsometryLabel:
    """Finitely supported assignment of Klein four-group elements to petals.

    At a petal ``u`` the element acts on the subtree below ``u``:

    * ``h`` exchanges the two child subtrees of ``u`` (the left-right mirror
      of the petal) on both sheets;
    * ``v`` at the root exchanges the two sheets (the upper-lower mirror);
    * ``v`` below the root exchanges the child subtrees on the upper sheet
      only.  The upper-lower mirror of a non-root petal does not extend to
      the rose, because its central segment is glued to one half of a
      parent border per sheet.

    Labels are read off the source address, so the action of a label is a
    tree automorphism given by its portrait.
    """

    labels: tuple[tuple[str, str], ...] = ()

    @classmethod
    def from_dict(cls, mapping: dict[str, str]) -> "IsometryLabel":
        for addr, el in mapping.items():
            if el not in _ELEMENTS:
                raise DomainError(f"unknown Klein four element {el!r}")
            if any(c not in SIDES for c in addr):
                raise DomainError(f"bad petal address {addr!r}")
        return cls(tuple(sorted((a, e) for a, e in mapping.items() if e != "e")))

    def as_dict(self) -> dict[str, str]:
        return dict(self.labels)

    @cached_property
    def _lookup(self) -> dict[str, str]:
        return dict(self.labels)

    def element(self, addr: str) -> str:
        return self._lookup.get(addr, "e")

    def is_identity(self) -> bool:
        return not self.labels

    @property
    def sheet_swap(self) -> int:
        return _ELEMENTS[self.element("")][1]

    def swap_bit(self, node: str, sheet: Sheet) -> int:
        """Whether the children of ``node`` are exchanged for a point on ``sheet``."""
        h, v = _ELEMENTS[self.element(node)]
        if node and v and sheet is UPPER:
            h ^= 1
        return h

    def image_word(self, word: str, sheet: Sheet) -> str:
        out = []
        for i, letter in enumerate(word):
            out.append(flip(letter) if self.swap_bit(word[:i], sheet) else letter)
        return "".join(out)

    def preimage_word(self, word: str, sheet: Sheet) -> str:
        src = ""
        for letter in word:
            src += flip(letter) if self.swap_bit(src, sheet) else letter
        return src

    def image_sheet(self, sheet: Sheet) -> Sheet:
        return sheet.other if self.sheet_swap else sheet


def apply_isometry(g: IsometryLabel, p: RosePoint, table: RadiiTable) -> RosePoint:
    if p.is_center:
        return p
    moved = g.image_word(p.addr + p.side, p.sheet)
    q = RosePoint(moved[:-1], moved[-1], g.image_sheet(p.sheet), p.rho, p.alpha)
    return canonicalize(q, table)


def compose(g1: IsometryLabel, g2: IsometryLabel) -> IsometryLabel:
    """Label of ``g1 o g2`` (apply ``g2`` first)."""
    candidates = {a for a, _ in g2.labels}
    for w, _ in g1.labels:
        for sheet in (UPPER, LOWER):
            candidates.add(g2.preimage_word(w, sheet))
    out = {}
    for u in candidates:
        if not u:
            h = _ELEMENTS[g1.element("")][0] ^ _ELEMENTS[g2.element("")][0]
            v = g1.sheet_swap ^ g2.sheet_swap
        else:
            bits = {}
            for sheet in (UPPER, LOWER):
                image = g2.image_word(u, sheet)
                bits[sheet] = g2.swap_bit(u, sheet) ^ g1.swap_bit(image, g2.image_sheet(sheet))
            h = bits[LOWER]
            v = bits[UPPER] ^ bits[LOWER]
        out[u] = _NAMES[(h, v)]
    return IsometryLabel.from_dict(out)


def random_label(rng: random.Random, depth: int, size: int) -> IsometryLabel:
    mapping = {}
    for _ in range(size):
        mapping[random_word(rng, rng.randint(0, depth - 1))] = rng.choice(("h", "v", "hv"))
    return IsometryLabel.from_dict(mapping)


def isometry_suite(metric: RoseMetric, trials: int, depth: int, seed: int, tol: float = ISOMETRY_TOL) -> dict:
    rng = random.Random(seed)
    table = metric.table
    failures = []
    max_dev = 0.0
    involutions = 0
    for _ in range(trials):
        g = random_label(rng, depth, rng.randint(1, 6))
        p = random_point(rng, table, depth)
        q = random_point(rng, table, depth)
        gp, gq = apply_isometry(g, p, table), apply_isometry(g, q, table)
        dev = abs(metric.distance(gp, gq) - metric.distance(p, q))
        max_dev = max(max_dev, dev)
        problems = []
        if dev > tol:
            problems.append("distance")
        if gp.level != p.level or gp.rho != p.rho:
            problems.append("level/rho")
        if compose(g, g).is_identity():
            involutions += 1
            if apply_isometry(g, gp, table) != p:
                problems.append("involution")
        h = random_label(rng, depth, rng.randint(1, 4))
        if apply_isometry(compose(h, g), p, table) != apply_isometry(h, gp, table):
            problems.append("composition")
        if problems:
            failures.append({"p": format_point(p), "q": format_point(q), "g": g.as_dict(), "problems": problems})
    return {
        "name": "isometry",
        "pass": not failures,
        "max_err": max_dev,
        "trials": trials,
        "involutions": involutions,
        "failures": failures,
    }


# --- radii ------------------------------------------------------------------

def hyperbolic_radius_bound(table: RadiiTable, terms: int = 100_000) -> float:
    """Upper bound for all hyperbolic radii: ``arcosh(cosh 1 * prod_{k>=2} cosh(1/k))``.

    The product is truncated at ``terms`` and the tail bounded by
    ``exp(1 / (2 * terms))``.
    """
    log_prod = math.log(math.cosh(1.0))
    for k in range(2, terms + 1):
        log_prod += math.log(math.cosh(1.0 / k))
    log_prod += 0.5 / terms
    return math.acosh(math.exp(log_prod))


def radius_report(table: RadiiTable, n_max: int, rows: int = 20) -> dict:
    """Tabulate radii and angles and check the bounds they must satisfy."""
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    table.radius(n_max + 1)
    flat = table.curvature is FLAT
    limit = math.pi / math.sqrt(6.0) if flat else hyperbolic_radius_bound(table)
    failures = []
    max_err = 0.0
    for n in range(1, n_max + 1):
        r = table.radius(n)
        if not r < limit or not table.radius(n + 1) > r:
            failures.append({"n": n, "check": "bounded increasing"})
        if n > 1 and not table.theta(n) < table.theta(n - 1):
            failures.append({"n": n, "check": "theta decreasing"})
        if flat:
            tail = math.pi ** 2 / 6.0 - r * r
            if not 1.0 / (n + 1) < tail < 1.0 / n:
                failures.append({"n": n, "check": "tail"})
            ratio = math.sin(table.theta(n)) * math.pi * (n + 1) / math.sqrt(6.0)
            if not ratio > 1.0:
                failures.append({"n": n, "check": "angle bound"})
            step = table.radius(n + 1) ** 2 - r * r - 1.0 / (n + 1) ** 2
            max_err = max(max_err, abs(step))
    shown = list(range(1, min(n_max, rows) + 1))
    if n_max not in shown:
        shown.append(n_max)
    table_rows = [
        {
            "n": n,
            "radius": table.radius(n),
            "theta": table.theta(n),
            "theta_deg": math.degrees(table.theta(n)),
            "theta_cumulative": table.theta_sum(1, n),
            "theta_cumulative_deg": math.degrees(table.theta_sum(1, n)),
            "tail": (math.pi ** 2 / 6.0 - table.radius(n) ** 2) if flat else limit - table.radius(n),
        }
        for n in shown
    ]
    return {
        "name": "radius",
        "pass": not failures and max_err <= 1e-14,
        "max_err": max_err,
        "n_max": n_max,
        "radius_bound": limit,
        "rows": table_rows,
        "failures": failures,
    }
