"""Closed-form bounds on principal eigenvector entries and their certification.

Every bound is a plain function of ``(rho, degree, n, r, distance)``;
:func:`certify_all` evaluates each one against a computed Perron pair and
returns one :class:`BoundCertificate` per (bound, subject).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np

from .errors import BoundInapplicable, InvalidParameters, NonPositiveDenominator
from .hypergraph import Hypergraph, degrees, distance_matrix, is_linear
from .spectral import SpectralResult

BRANCH_EPS = 1e-9
DEFAULT_TOL = 1e-8
TIE_RTOL = 1e-9
ALL_PAIRS_MAX_N = 12
SAMPLED_PAIRS = 256


class BoundId(str, Enum):
    ENTRY_LINEAR = "EntryLinear"
    ENTRY_LINEAR_UNIFORM = "EntryLinearUniform"
    ENTRY_GENERAL = "EntryGeneral"
    MIN_ENTRY_LINEAR = "MinEntryLinear"
    RATIO_POW = "RatioPow"
    RATIO_SIGMA = "RatioSigma"
    RATIO_SIGMA_DEGENERATE = "RatioSigmaDegenerate"
    PRINCIPAL_RATIO = "PrincipalRatio"
    RHO_VS_MAX_DEGREE = "RhoVsMaxDegree"


_ORDER = {b: k for k, b in enumerate(BoundId)}


class Branch(str, Enum):
    STRICT = "strict"
    DEGENERATE = "degenerate"
    INAPPLICABLE = "inapplicable"


def _check(rho, d=1, r=2):
    if not (rho > 0 and d >= 1 and r >= 2):
        raise InvalidParameters(f"need rho > 0, d >= 1, r >= 2; got rho={rho}, d={d}, r={r}")


def bound_entry_linear(rho: float, d: float, r: int) -> float:
    """Upper bound on ``x_v`` for a vertex of degree ``d`` in a linear hypergraph:
    ``[1 + (r-1) (rho^r / d)^{1/(r-1)}]^{-1/r}``."""
    _check(rho, d, r)
    return (1.0 + (r - 1) * (rho**r / d) ** (1.0 / (r - 1))) ** (-1.0 / r)


def bound_entry_linear_uniform(r: int) -> float:
    """``r^{-1/r}``, valid for every entry of a connected linear hypergraph."""
    if r < 2:
        raise InvalidParameters(f"r must be >= 2, got {r}")
    return r ** (-1.0 / r)


def bound_entry_general(rho: float, d: float, r: int) -> float:
    """``(d / [rho^r (r-1)!]^{1/(r-1)})^{1/r}``; no linearity needed."""
    _check(rho, d, r)
    return (d / (rho**r * math.factorial(r - 1)) ** (1.0 / (r - 1))) ** (1.0 / r)


def bound_min_entry(rho: float, delta: float, n: int, r: int) -> float:
    """Upper bound on the smallest entry of a connected linear hypergraph:
    ``[(r-1)(rho^r/delta)^{1/(r-1)} + n - delta(r-1)]^{-1/r}``."""
    _check(rho, delta, r)
    denom = (r - 1) * (rho**r / delta) ** (1.0 / (r - 1)) + n - delta * (r - 1)
    if denom <= 0:
        raise NonPositiveDenominator(f"bracket {denom!r} is not positive")
    return denom ** (-1.0 / r)


def ratio_bound_pow(rho: float, ell: int) -> tuple[float, float]:
    """``(rho^-ell, rho^ell)`` brackets ``x_u / x_v`` at distance ``ell``."""
    if ell < 0:
        raise InvalidParameters(f"distance must be >= 0, got {ell}")
    hi = rho**ell
    return 1.0 / hi, hi


class SigmaBound(NamedTuple):
    lo: float
    hi: float
    branch: Branch


def sigma(rho: float, r: int) -> float:
    """``(sqrt(rho^r) + sqrt(rho^r - 4)) / 2``; requires ``rho^r >= 4``."""
    p = rho**r
    return 0.5 * (math.sqrt(p) + math.sqrt(max(p - 4.0, 0.0)))


def _sigma_ratio(s: float, ell: int) -> float:
    # (s^{l+1} - s^{-(l+1)}) / (s - 1/s) written as a sum, no cancellation near s = 1
    return math.fsum(s ** (ell - 2 * i) for i in range(ell + 1))


def sigma_branch(rho: float, r: int, eps: float = BRANCH_EPS) -> Branch:
    gap = rho**r - 4.0
    if gap > eps:
        return Branch.STRICT
    if gap >= -eps:
        return Branch.DEGENERATE
    return Branch.INAPPLICABLE


def ratio_bound_sigma(rho: float, ell: int, r: int, eps: float = BRANCH_EPS) -> SigmaBound:
    """Sharper ratio bracket when ``rho^r >= 4``.

    Strict branch (``rho^r > 4``):
    ``hi = ((s^{l+1} - s^{-(l+1)}) / (s - s^{-1}))^{2/r}`` with ``s = sigma``.
    Degenerate branch (``rho^r == 4`` within ``eps``): ``hi = (l+1)^{2/r}``.
    ``lo = 1/hi`` in both; otherwise the branch is ``INAPPLICABLE`` and both
    ends are NaN.
    """
    if ell < 0:
        raise InvalidParameters(f"distance must be >= 0, got {ell}")
    branch = sigma_branch(rho, r, eps)
    if branch is Branch.STRICT:
        hi = _sigma_ratio(sigma(rho, r), ell) ** (2.0 / r)
    elif branch is Branch.DEGENERATE:
        hi = (ell + 1) ** (2.0 / r)
    else:
        return SigmaBound(math.nan, math.nan, branch)
    return SigmaBound(1.0 / hi, hi, branch)


def principal_ratio_bound(rho: float, ell: int, r: int, eps: float = BRANCH_EPS) -> float:
    """Upper bound on ``x_max / x_min`` when ``rho^r > 4``; ``ell`` is the
    shortest distance between a maximal and a minimal entry."""
    if sigma_branch(rho, r, eps) is not Branch.STRICT:
        raise BoundInapplicable(f"needs rho^r > 4, got rho^r = {rho**r!r}")
    return ratio_bound_sigma(rho, ell, r, eps).hi


@dataclass(frozen=True)
class BoundCertificate:
    bound_id: BoundId
    subject: tuple[int, ...]
    bound_value: Optional[float]
    actual_value: float
    direction: str  # "upper": actual <= bound; "lower": actual >= bound
    applicable: bool
    reason: str = ""
    tolerance: float = DEFAULT_TOL
    ell: Optional[int] = None

    @property
    def slack(self) -> Optional[float]:
        if self.bound_value is None:
            return None
        if self.direction == "upper":
            return self.bound_value - self.actual_value
        return self.actual_value - self.bound_value

    @property
    def passed(self) -> bool:
        if not self.applicable or self.bound_value is None:
            return False
        # tolerance is relative to the bound's magnitude once it exceeds 1
        return self.slack >= -self.tolerance * max(1.0, abs(self.bound_value))

    @property
    def sort_key(self):
        return (_ORDER[self.bound_id], self.subject)


def extreme_vertices(x: np.ndarray, rtol: float = TIE_RTOL) -> tuple[np.ndarray, np.ndarray]:
    """Vertices attaining the maximum and minimum entry, ties at relative ``rtol``."""
    hi, lo = x.max(), x.min()
    return np.flatnonzero(x >= hi * (1 - rtol)), np.flatnonzero(x <= lo * (1 + rtol))


def principal_ratio_distance(dist: np.ndarray, x: np.ndarray) -> int:
    tops, bottoms = extreme_vertices(x)
    return int(dist[np.ix_(tops, bottoms)].min())


def _pairs(H: Hypergraph, x: np.ndarray, seed: int):
    n = H.n
    if n <= ALL_PAIRS_MAX_N:
        return [(u, v) for u in range(n) for v in range(n) if u != v]
    rng = np.random.default_rng(seed)
    chosen = set()
    tops, bottoms = extreme_vertices(x)
    for u in tops:
        for v in bottoms:
            if u != v:
                chosen.add((int(u), int(v)))
                chosen.add((int(v), int(u)))
    while len(chosen) < min(SAMPLED_PAIRS, n * (n - 1)):
        u, v = rng.choice(n, size=2, replace=False).tolist()
        chosen.add((u, v))
    return sorted(chosen)


def certify_all(
    H: Hypergraph, s: SpectralResult, tol: float = DEFAULT_TOL, seed: int = 0
) -> list[BoundCertificate]:
    """Evaluate every bound on the computed eigenpair.

    Ratio bounds are checked as upper bounds on ``x_u / x_v`` over ordered
    pairs; the lower ends follow from the reversed pair since each bracket
    is ``(1/hi, hi)``.
    """
    r, n, rho, x = H.r, H.n, s.rho, s.x
    deg = degrees(H)
    linear = is_linear(H)
    not_linear = "" if linear else "hypergraph is not linear"
    dist = distance_matrix(H)
    certs: list[BoundCertificate] = []

    def add(bid, subject, bound, actual, direction="upper", applicable=True, reason="", ell=None):
        certs.append(
            BoundCertificate(bid, tuple(int(v) for v in subject), bound, float(actual),
                             direction, applicable, reason, tol, ell)
        )

    uniform = bound_entry_linear_uniform(r)
    for v in range(n):
        d = int(deg[v])
        add(BoundId.ENTRY_LINEAR, (v,), bound_entry_linear(rho, d, r), x[v],
            applicable=linear, reason=not_linear)
        add(BoundId.ENTRY_LINEAR_UNIFORM, (v,), uniform, x[v], applicable=linear, reason=not_linear)
        add(BoundId.ENTRY_GENERAL, (v,), bound_entry_general(rho, d, r), x[v])

    vmin = s.argmin
    delta = int(deg.min())
    try:
        add(BoundId.MIN_ENTRY_LINEAR, (vmin,), bound_min_entry(rho, delta, n, r), s.x_min,
            applicable=linear, reason=not_linear)
    except NonPositiveDenominator as exc:
        add(BoundId.MIN_ENTRY_LINEAR, (vmin,), None, s.x_min, applicable=False, reason=str(exc))

    branch = sigma_branch(rho, r)
    sigma_id = BoundId.RATIO_SIGMA_DEGENERATE if branch is Branch.DEGENERATE else BoundId.RATIO_SIGMA
    for u, v in _pairs(H, x, seed):
        ell = int(dist[u, v])
        ratio = x[u] / x[v]
        add(BoundId.RATIO_POW, (u, v), ratio_bound_pow(rho, ell)[1], ratio, ell=ell)
        if branch is not Branch.INAPPLICABLE:
            add(sigma_id, (u, v), ratio_bound_sigma(rho, ell, r).hi, ratio, ell=ell)
    if branch is Branch.INAPPLICABLE:
        add(BoundId.RATIO_SIGMA, (), None, rho**r, applicable=False,
            reason=f"rho^r = {rho**r:.6g} < 4")

    ell = principal_ratio_distance(dist, x)
    subject = (s.argmax, s.argmin)
    if branch is Branch.STRICT:
        add(BoundId.PRINCIPAL_RATIO, subject, principal_ratio_bound(rho, ell, r),
            s.principal_ratio, ell=ell)
    else:
        add(BoundId.PRINCIPAL_RATIO, subject, None, s.principal_ratio, applicable=False,
            reason=f"rho^r = {rho**r:.6g} is not > 4", ell=ell)

    add(BoundId.RHO_VS_MAX_DEGREE, (), float(deg.max()) ** (1.0 / r), rho, direction="lower")

    certs.sort(key=lambda c: c.sort_key)
    return certs


def summarize(certs: list[BoundCertificate]) -> dict[str, dict[str, int]]:
    """Per-bound counts of applicable, passed and failed certificates."""
    out: dict[str, dict[str, int]] = {}
    for c in certs:
        row = out.setdefault(c.bound_id.value, {"total": 0, "applicable": 0, "passed": 0, "failed": 0})
        row["total"] += 1
        if c.applicable:
            row["applicable"] += 1
            row["passed" if c.passed else "failed"] += 1
    return out


def failures(certs: list[BoundCertificate]) -> list[BoundCertificate]:
    return [c for c in certs if c.applicable and not c.passed]
