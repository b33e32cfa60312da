"""Brute-force shortest paths on a finite truncation of the rose.

The truncated rose is a finite complex of triangles.  Each triangle is
convex, so the shortest path between two of its points is the straight
chord; a shortest path in the complex is a chain of such chords meeting at
triangle boundaries.  The mesh samples the boundary of every triangle at
multiples of ``step`` and links every pair of samples in a common triangle
by the chord length, computed in the triangle's own planar (or hyperboloid)
coordinates.  Nothing here uses the link tree or the cone law of cosines,
which is what makes it usable as a check on :mod:`rose.metric`.

Samples sit at integer multiples of ``step`` along each edge, so the mesh
for ``step / 2`` contains the mesh for ``step`` and oracle values can only
decrease under refinement.  Query points are inserted as extra nodes rather
than snapped, so the snap error is zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import dijkstra

from .core import CENTER, SIDES, LOWER, UPPER, RadiiTable, RosePoint, TriangleId, get_table
from .kernel import FLAT, DomainError


def _grid(length: float, step: float) -> list[float]:
    """Multiples of ``step`` in ``(0, length)`` followed by ``length`` itself."""
    k = math.ceil(length / step)
    pts = [i * step for i in range(1, k) if i * step < length]
    pts.append(length)
    return pts


def triangles(depth: int):
    """All triangles of petal level at most ``depth``, both sheets."""
    for sheet in (UPPER, LOWER):
        frontier = [""]
        for _ in range(depth):
            nxt = []
            for addr in frontier:
                for side in SIDES:
                    yield TriangleId(addr, side, sheet)
                    nxt.append(addr + side)
            frontier = nxt


@dataclass
class MeshGraph:
    depth: int
    step: float
    table: RadiiTable
    keys: list = field(default_factory=list)
    polar: list = field(default_factory=list)  # (rho, alpha) in the owning triangle chart
    members: dict = field(default_factory=dict)  # TriangleId -> [(node, rho, alpha)]
    _index: dict = field(default_factory=dict)

    @property
    def n_nodes(self) -> int:
        return len(self.keys)

    def _node(self, key) -> int:
        idx = self._index.get(key)
        if idx is None:
            idx = len(self.keys)
            self._index[key] = idx
            self.keys.append(key)
        return idx

    def triangles_containing(self, p: RosePoint) -> list[TriangleId]:
        """Triangles (within the truncation) whose closure holds canonical ``p``."""
        if p.is_center:
            return [tri for tri in self.members]
        out = [p.triangle]
        n = p.level
        if p.alpha == 0.0:  # root median
            out.append(TriangleId("", "L", p.sheet))
        elif p.alpha == self.table.theta(n) and n < self.depth:
            child = p.addr + p.side
            out += [TriangleId(child, s, p.sheet) for s in SIDES]
        return out

    def local_coords(self, tri: TriangleId, p: RosePoint) -> tuple[float, float]:
        """Polar coordinates of ``p`` in the chart of ``tri``."""
        if p.is_center:
            return 0.0, 0.0
        if tri == p.triangle or (p.alpha == 0.0 and tri.addr == ""):
            return p.rho, p.alpha
        return p.rho, 0.0  # p lies on the median of tri


def build_mesh(depth: int, step: float, table: RadiiTable | None = None) -> MeshGraph:
    table = table or get_table(FLAT)
    if depth < 1:
        raise DomainError("mesh depth must be >= 1")
    mesh = MeshGraph(depth, step, table)
    center = mesh._node(("center",))
    for tri in triangles(depth):
        n = tri.level
        median_v = tri.addr
        border_v = tri.addr + tri.side
        nodes = [(center, 0.0, 0.0)]
        for rho in _grid(table.radius(n), step):
            nodes.append((mesh._node(("ray", tri.sheet, median_v, rho)), rho, 0.0))
        th = table.theta(n)
        for rho in _grid(table.radius(n + 1), step):
            nodes.append((mesh._node(("ray", tri.sheet, border_v, rho)), rho, th))
        for u in _grid(table.half_base(n), step)[:-1]:
            rho, alpha = table.base_point(n, u)
            nodes.append((mesh._node(("base", tri, u)), rho, alpha))
        mesh.members[tri] = nodes
    return mesh


def chord_lengths(curvature, rho_a, alpha_a, rho_b, alpha_b):
    """Pairwise chord lengths between two polar point sets of one triangle."""
    rho_a = np.asarray(rho_a)[:, None]
    alpha_a = np.asarray(alpha_a)[:, None]
    rho_b = np.asarray(rho_b)[None, :]
    alpha_b = np.asarray(alpha_b)[None, :]
    if curvature is FLAT:
        dx = rho_a * np.cos(alpha_a) - rho_b * np.cos(alpha_b)
        dy = rho_a * np.sin(alpha_a) - rho_b * np.sin(alpha_b)
        return np.hypot(dx, dy)
    # hyperboloid coordinates; for x, y on the sheet, |x - y|_Minkowski = 2 sinh(d / 2)
    sa, sb = np.sinh(rho_a), np.sinh(rho_b)
    d0 = np.cosh(rho_a) - np.cosh(rho_b)
    d1 = sa * np.cos(alpha_a) - sb * np.cos(alpha_b)
    d2 = sa * np.sin(alpha_a) - sb * np.sin(alpha_b)
    chord2 = np.maximum(d1 * d1 + d2 * d2 - d0 * d0, 0.0)
    return 2.0 * np.arcsinh(0.5 * np.sqrt(chord2))


class MeshOracle:
    """Shortest-path distances on a mesh, with query points spliced in."""

    def __init__(self, depth: int, step: float, table: RadiiTable | None = None):
        self.mesh = build_mesh(depth, step, table)
        self.table = self.mesh.table

    def _check(self, p: RosePoint) -> None:
        if not p.is_center and p.level > self.mesh.depth:
            raise DomainError(f"point of level {p.level} lies beyond truncation depth {self.mesh.depth}")

    def distances(self, pairs) -> np.ndarray:
        """Oracle distance for each ``(p, q)`` in ``pairs``."""
        pairs = list(pairs)
        mesh, kappa = self.mesh, self.table.curvature
        base_nodes = mesh.n_nodes
        query_index: dict[RosePoint, int] = {}
        extra: dict[TriangleId, list] = {}
        for p, q in pairs:
            for x in (p, q):
                self._check(x)
                if x in query_index:
                    continue
                if x.is_center:
                    query_index[x] = 0
                    continue
                query_index[x] = base_nodes + len(query_index)
                for tri in mesh.triangles_containing(x):
                    extra.setdefault(tri, []).append((query_index[x],) + mesh.local_coords(tri, x))
        n_total = base_nodes + len(query_index)
        rows, cols, weights = [], [], []
        for tri, nodes in mesh.members.items():
            nodes = nodes + extra.get(tri, [])
            idx = np.array([v[0] for v in nodes])
            rho = np.array([v[1] for v in nodes])
            alpha = np.array([v[2] for v in nodes])
            w = chord_lengths(kappa, rho, alpha, rho, alpha)
            i, j = np.triu_indices(len(nodes), k=1)
            rows.append(idx[i])
            cols.append(idx[j])
            weights.append(w[i, j])
        rows = np.concatenate(rows)
        cols = np.concatenate(cols)
        weights = np.concatenate(weights)
        lo, hi = np.minimum(rows, cols), np.maximum(rows, cols)
        keep = lo != hi
        lo, hi, weights = lo[keep], hi[keep], weights[keep]
        # shared radial edges produce duplicate links; keep the shortest
        order = np.lexsort((weights, hi, lo))
        lo, hi, weights = lo[order], hi[order], weights[order]
        first = np.ones(len(lo), dtype=bool)
        first[1:] = (lo[1:] != lo[:-1]) | (hi[1:] != hi[:-1])
        # scipy treats explicit zeros as missing links
        weights = np.maximum(weights[first], 1e-300)
        graph = coo_matrix((weights, (lo[first], hi[first])), shape=(n_total, n_total)).tocsr()
        sources = sorted({query_index[p] for p, _ in pairs})
        dist = dijkstra(graph, directed=False, indices=sources)
        row_of = {s: k for k, s in enumerate(sources)}
        out = np.empty(len(pairs))
        for k, (p, q) in enumerate(pairs):
            out[k] = 0.0 if p == q else dist[row_of[query_index[p]], query_index[q]]
        return out

    def distance(self, p: RosePoint, q: RosePoint) -> float:
        return float(self.distances([(p, q)])[0])


def oracle_distance(mesh_or_oracle, p: RosePoint, q: RosePoint) -> float:
    return mesh_or_oracle.distance(p, q)


# float slack on the lower gap bound and on refinement monotonicity
ROUNDING_TOL = 1e-12


def oracle_compare_suite(metric, depth: int, step: float, pairs: int, seed: int,
                         gap_factor: float = 2.5, refine: bool = True) -> dict:
    """Compare oracle and engine on seeded random pairs of level at most ``depth``.

    Every gap ``oracle - engine`` must lie in ``[0, gap_factor * step]`` and,
    with ``refine`` set, no oracle value may grow when ``step`` is halved.
    """
    import random

    from .verify import random_point

    if depth > 5:
        raise DomainError("oracle depth is limited to 5")
    rng = random.Random(seed)
    table = metric.table
    sample = [(random_point(rng, table, depth), random_point(rng, table, depth)) for _ in range(pairs)]
    coarse = MeshOracle(depth, step, table).distances(sample)
    exact = np.array([metric.distance(p, q) for p, q in sample])
    gaps = coarse - exact
    report = {
        "name": f"oracle_{table.curvature.name.lower()}",
        "depth": depth,
        "step": step,
        "pairs": pairs,
        "nodes": None,
        "min_gap": float(gaps.min()),
        "max_gap": float(gaps.max()),
        "mean_gap": float(gaps.mean()),
        "gap_bound": gap_factor * step,
    }
    ok = report["min_gap"] >= -ROUNDING_TOL and report["max_gap"] <= gap_factor * step
    if refine:
        fine = MeshOracle(depth, step / 2, table).distances(sample)
        growth = float((fine - coarse).max())
        report["max_refinement_growth"] = growth
        report["fine_max_gap"] = float((fine - exact).max())
        ok = ok and growth <= ROUNDING_TOL
    report["nodes"] = build_mesh(depth, step, table).n_nodes
    report["pass"] = bool(ok)
    report["max_err"] = report["max_gap"]
    return report
