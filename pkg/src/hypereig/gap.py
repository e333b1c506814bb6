"""Spectral-gap lower bound for single-edge deletions, with diameter lemmas."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import DisconnectedInput, EdgeIndexOutOfRange, InvalidParameters
from .hypergraph import (
    Hypergraph,
    components,
    delete_edge,
    diameter,
    distance_matrix,
    is_connected,
)
from .spectral import IterationOptions, SpectralResult, power_iteration

DEFAULT_TOL = 1e-8


def gap_lower_bound(n: int, r: int, D: int, rho: float) -> tuple[float, float, float]:
    """Return ``(bound, term_connected, term_disconnected)`` where

    ``term_connected = r / (n rho^{r(r-1)(D+1)})``,
    ``term_disconnected = 1 / (n rho^{rD} (rho^{r-1} + r - 1))`` and
    ``bound`` is their minimum. ``D`` is the diameter of the original graph.
    """
    if n < r or r < 2 or D < 0 or not rho >= 1:
        raise InvalidParameters(f"need n >= r >= 2, D >= 0, rho >= 1; got n={n}, r={r}, D={D}, rho={rho}")
    term_connected = r / (n * rho ** (r * (r - 1) * (D + 1)))
    term_disconnected = 1.0 / (n * rho ** (r * D) * (rho ** (r - 1) + r - 1))
    return min(term_connected, term_disconnected), term_connected, term_disconnected


def spectral_radius_general(H: Hypergraph, opts: Optional[IterationOptions] = None) -> float:
    """Largest component spectral radius; edgeless components count as 0."""
    rho = 0.0
    for comp in components(H):
        if comp.hypergraph.m:
            rho = max(rho, power_iteration(comp.hypergraph, opts).rho)
    return rho


@dataclass(frozen=True)
class DiameterCheck:
    applicable: bool
    diameter: Optional[int] = None
    diameter_bound: Optional[int] = None
    dist_sum: Optional[int] = None
    dist_sum_bound: Optional[int] = None

    @property
    def diam_ok(self) -> Optional[bool]:
        return None if not self.applicable else self.diameter <= self.diameter_bound

    @property
    def dist_sum_ok(self) -> Optional[bool]:
        return None if not self.applicable else self.dist_sum <= self.dist_sum_bound

    @property
    def ok(self) -> bool:
        return not self.applicable or (self.diam_ok and self.dist_sum_ok)


def check_diameter_lemmas(H: Hypergraph, e_index: int, D: Optional[int] = None) -> DiameterCheck:
    """Deleting one edge from a diameter-D hypergraph keeps, if still
    connected, ``diam <= r(D+1)`` and ``max_w sum_{v in e} d(w, v) <= r(r-1)(D+1)``.
    """
    if not 0 <= e_index < H.m:
        raise EdgeIndexOutOfRange(f"edge index {e_index} not in [0, {H.m})")
    if D is None:
        D = diameter(H)
    sub = delete_edge(H, e_index)
    dist = distance_matrix(sub)
    if (dist < 0).any():
        return DiameterCheck(applicable=False)
    r = H.r
    edge = list(H.edges[e_index])
    return DiameterCheck(
        applicable=True,
        diameter=int(dist.max()),
        diameter_bound=r * (D + 1),
        dist_sum=int(dist[:, edge].sum(axis=1).max()),
        dist_sum_bound=r * (r - 1) * (D + 1),
    )


@dataclass(frozen=True)
class GapRecord:
    edge_index: int
    edge: tuple[int, ...]
    rho_sub: float
    connected_after: bool
    component_count: int
    gap: float
    bound: float
    term_connected: float
    term_disconnected: float
    tolerance: float
    lemmas: DiameterCheck

    @property
    def slack(self) -> float:
        return self.gap - self.bound

    @property
    def passed(self) -> bool:
        return self.gap >= self.bound - self.tolerance


@dataclass
class GapReport:
    n: int
    r: int
    diameter: int
    rho: float
    records: list[GapRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(rec.passed and rec.lemmas.ok for rec in self.records)

    @property
    def n_connected(self) -> int:
        return sum(rec.connected_after for rec in self.records)

    @property
    def n_disconnected(self) -> int:
        return len(self.records) - self.n_connected


def audit_edge_deletions(
    H: Hypergraph,
    s: Optional[SpectralResult] = None,
    opts: Optional[IterationOptions] = None,
    tol: float = DEFAULT_TOL,
) -> GapReport:
    """Compare ``rho(H) - rho(H - e)`` with the lower bound for every edge."""
    if not is_connected(H):
        raise DisconnectedInput("gap audit needs a connected hypergraph")
    opts = opts or IterationOptions()
    if s is None:
        s = power_iteration(H, opts)
    D = diameter(H)
    bound, t_conn, t_disc = gap_lower_bound(H.n, H.r, D, s.rho)
    report = GapReport(H.n, H.r, D, s.rho)
    for i, edge in enumerate(H.edges):
        sub = delete_edge(H, i)
        parts = components(sub)
        rho_sub = spectral_radius_general(sub, opts)
        report.records.append(
            GapRecord(
                edge_index=i,
                edge=edge,
                rho_sub=rho_sub,
                connected_after=len(parts) == 1,
                component_count=len(parts),
                gap=s.rho - rho_sub,
                bound=bound,
                term_connected=t_conn,
                term_disconnected=t_disc,
                tolerance=tol,
                lemmas=check_diameter_lemmas(H, i, D),
            )
        )
    return report


def graph_gap_bound(n: int, D: int, rho: float) -> float:
    """Graph-case gap bound ``1 / (n rho^{2D})``, for cross-checking r = 2."""
    return 1.0 / (n * rho ** (2 * D))
