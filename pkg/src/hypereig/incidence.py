"""Consistently alpha-normal weighted incidence matrices.

For the Perron pair ``(rho, x)`` of a connected r-uniform hypergraph the
matrix ``B(v, e) = x^e / (rho * x_v^r)`` (with ``x^e`` the product of the
entries of ``x`` over ``e``) has unit row sums, edge products
``alpha = rho^{-r}``, and telescoping cycle products. This module builds it
and checks each identity numerically.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .errors import DisconnectedInput, NotConverged
from .hypergraph import Hypergraph, is_connected
from .spectral import SpectralResult, edge_products

DEFAULT_TOL = 1e-8
DEFAULT_CYCLE_BUDGET = 1000


@dataclass(frozen=True, eq=False)
class WeightedIncidence:
    """``values[i, j]`` is ``B(edges[i][j], i)``; every other entry is zero."""

    alpha: float
    edges: tuple[tuple[int, ...], ...]
    values: np.ndarray

    def __getitem__(self, key) -> float:
        v, e = key
        edge = self.edges[e]
        return float(self.values[e, edge.index(v)]) if v in edge else 0.0

    @property
    def entries(self) -> dict[tuple[int, int], float]:
        return {
            (v, i): float(self.values[i, j])
            for i, e in enumerate(self.edges)
            for j, v in enumerate(e)
        }

    def to_dense(self, n: int) -> np.ndarray:
        B = np.zeros((n, len(self.edges)))
        for i, e in enumerate(self.edges):
            B[list(e), i] = self.values[i]
        return B

    def with_entry(self, v: int, e: int, value: float) -> "WeightedIncidence":
        """Copy with one incidence overwritten (fault injection)."""
        if v not in self.edges[e]:
            raise ValueError(f"vertex {v} is not in edge {e}")
        values = self.values.copy()
        values[e, self.edges[e].index(v)] = value
        return replace(self, values=values)


def identity_tolerance(s: SpectralResult, base: float = DEFAULT_TOL) -> float:
    """Verification tolerance, never tighter than the eigenpair quality allows."""
    return max(base, 20.0 * s.residual_inf / s.rho)


def build_incidence(H: Hypergraph, s: SpectralResult, max_residual: float = 1e-8) -> WeightedIncidence:
    if s.residual_inf > max_residual * max(1.0, s.rho):
        raise NotConverged(f"residual {s.residual_inf!r} too large to build B")
    x = s.x
    xe = edge_products(H, x)
    values = xe[:, None] / (s.rho * x[H.edge_array] ** H.r)
    values.setflags(write=False)
    return WeightedIncidence(float(s.rho ** (-H.r)), H.edges, values)


@dataclass
class AlphaNormalReport:
    tolerance: float
    row_sum_dev: float
    row_sum_vertex: int
    edge_product_dev: float
    edge_product_edge: int
    spread_dev: float
    spread_edge: int
    alpha_dev: float
    pair_product_dev: float
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_alpha_normal(
    B: WeightedIncidence, H: Hypergraph, s: SpectralResult, tolerance: Optional[float] = None
) -> AlphaNormalReport:
    """Check row sums, edge products, within-edge constancy and pair products.

    * ``sum_{e ni v} B(v, e) = 1`` for every vertex
    * ``prod_{v in e} B(v, e) * rho^r = 1`` for every edge
    * ``B(v, e)^{1/r} x_v`` constant across each edge (relative spread)
    * ``alpha * rho^r = 1``
    * ``B(u, e) B(v, e) >= alpha`` for every pair inside an edge
    """
    tol = identity_tolerance(s) if tolerance is None else tolerance
    r, rho = H.r, s.rho
    vals = B.values
    E = H.edge_array

    rows = np.zeros(H.n)
    np.add.at(rows, E.ravel(), vals.ravel())
    row_dev = np.abs(rows - 1.0)

    prod = np.prod(vals, axis=1) * rho**r
    prod_dev = np.abs(prod - 1.0)

    w = vals ** (1.0 / r) * s.x[E]
    spread = (w.max(axis=1) - w.min(axis=1)) / w.max(axis=1)

    alpha_dev = abs(B.alpha * rho**r - 1.0)

    # smallest B(u,e)B(v,e) per edge is the product of its two smallest entries
    two_smallest = np.sort(vals, axis=1)[:, :2]
    pair_dev = float(np.max(1.0 - two_smallest[:, 0] * two_smallest[:, 1] / B.alpha))

    failures = []
    for v in np.flatnonzero(row_dev > tol):
        failures.append({"check": "row_sum", "vertex": int(v), "deviation": float(row_dev[v])})
    for i in np.flatnonzero(prod_dev > tol):
        failures.append({"check": "edge_product", "edge": int(i), "deviation": float(prod_dev[i])})
    for i in np.flatnonzero(spread > tol):
        failures.append({"check": "edge_spread", "edge": int(i), "deviation": float(spread[i])})
    if alpha_dev > tol:
        failures.append({"check": "alpha", "deviation": alpha_dev})
    if pair_dev > tol:
        failures.append({"check": "pair_product", "deviation": pair_dev})

    return AlphaNormalReport(
        tolerance=tol,
        row_sum_dev=float(row_dev.max()),
        row_sum_vertex=int(np.argmax(row_dev)),
        edge_product_dev=float(prod_dev.max()),
        edge_product_edge=int(np.argmax(prod_dev)),
        spread_dev=float(spread.max()),
        spread_edge=int(np.argmax(spread)),
        alpha_dev=alpha_dev,
        pair_product_dev=pair_dev,
        failures=failures,
    )


def locate_fault(report: AlphaNormalReport) -> Optional[tuple[int, int]]:
    """Best guess at the (vertex, edge) incidence responsible for failures."""
    v = next((f["vertex"] for f in report.failures if f["check"] == "row_sum"), None)
    e = next((f["edge"] for f in report.failures if "edge" in f), None)
    if v is None or e is None:
        return None
    return v, e


@dataclass
class ConsistencyReport:
    tolerance: float
    cycles_total: int
    cycles_checked: int
    max_dev: float
    worst_cycle: Optional[list[int]]
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def _fundamental_cycles(H: Hypergraph):
    """Yield closed walks ``v0, e1, v1, ..., e_l, v0`` of the vertex-edge
    incidence graph, one per incidence outside a BFS spanning tree.

    Nodes ``0..n-1`` are vertices, ``n + i`` is edge ``i``.
    """
    n = H.n
    adj: list[list[int]] = [[n + i for i in H.incidence[v]] for v in range(n)]
    adj += [list(e) for e in H.edges]
    parent = [-1] * len(adj)
    depth = [-1] * len(adj)
    depth[0] = 0
    queue = deque([0])
    tree = set()
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if depth[w] < 0:
                depth[w] = depth[u] + 1
                parent[w] = u
                tree.add((min(u, w), max(u, w)))
                queue.append(w)

    for i, e in enumerate(H.edges):
        enode = n + i
        for v in e:
            if (v, enode) in tree:
                continue
            # tree path from enode back to v via their lowest common ancestor
            a, b = enode, v
            up, down = [a], [b]
            while a != b:
                if depth[a] >= depth[b]:
                    a = parent[a]
                    up.append(a)
                else:
                    b = parent[b]
                    down.append(b)
            path = up + down[-2::-1]  # enode ... v, without repeating the LCA
            yield [v] + path


def _cycle_product(B: WeightedIncidence, walk: list[int], n: int) -> float:
    """``prod_i B(v_i, e_i) / B(v_{i-1}, e_i)`` along ``v0 e1 v1 ... e_l v_l``."""
    log_sum = 0.0
    for k in range(1, len(walk) - 1, 2):
        prev_v, enode, next_v = walk[k - 1], walk[k], walk[k + 1]
        i = enode - n
        log_sum += np.log(B[next_v, i]) - np.log(B[prev_v, i])
    return float(np.exp(log_sum))


def verify_consistency(
    B: WeightedIncidence,
    H: Hypergraph,
    cycle_budget: int = DEFAULT_CYCLE_BUDGET,
    tolerance: float = DEFAULT_TOL,
) -> ConsistencyReport:
    """Alternating products around the fundamental cycles must equal 1.

    The fundamental cycles of a spanning tree generate the whole cycle space,
    so checking them covers every closed walk.
    """
    if H.m and not is_connected(H):
        raise DisconnectedInput("consistency check needs a connected hypergraph")
    # incidences minus the n + m - 1 spanning-tree links
    cycles_total = H.m * H.r - (H.n + H.m - 1)
    checked = 0
    max_dev = 0.0
    worst = None
    failures = []
    for walk in _fundamental_cycles(H):
        if checked >= cycle_budget:
            break
        checked += 1
        dev = abs(_cycle_product(B, walk, H.n) - 1.0)
        if worst is None or dev > max_dev:
            max_dev, worst = dev, walk
        if dev > tolerance:
            failures.append({"cycle": _describe(walk, H.n), "deviation": dev})
    return ConsistencyReport(
        tolerance=tolerance,
        cycles_total=max(cycles_total, 0),
        cycles_checked=checked,
        max_dev=max_dev,
        worst_cycle=_describe(worst, H.n) if worst is not None else None,
        failures=failures,
    )


def _describe(walk: list[int], n: int) -> list[int]:
    # vertices as-is, edge nodes as their edge index: v0 e1 v1 e2 ... v0
    return [node - n if k % 2 else node for k, node in enumerate(walk)]
