"""Adjacency-tensor products and the shifted power method for the Perron pair.

The adjacency tensor of an r-uniform hypergraph has entry ``1/(r-1)!`` on
every permutation of every edge, so the tensor-vector product collapses to

    (A x)_i = sum over edges e containing i of prod_{u in e, u != i} x_u

and the Rayleigh form ``x^T (A x)`` to ``r * sum_e prod_{v in e} x_v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import (
    DimensionMismatch,
    DisconnectedInput,
    InvalidParameters,
    MaxIterationsExceeded,
    NoEdges,
    NotNormalized,
)
from .hypergraph import Hypergraph, is_connected

NORMALIZATION_TOL = 1e-9


def _as_vector(H: Hypergraph, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (H.n,):
        raise DimensionMismatch(f"expected a vector of length {H.n}, got shape {x.shape}")
    return x


def _apply(edges: np.ndarray, n: int, x: np.ndarray) -> np.ndarray:
    m, r = edges.shape
    vals = x[edges]
    y = np.zeros(n)
    for j in range(r):
        # Sequential product over the other positions, in sorted vertex order.
        prod = np.ones(m)
        for k in range(r):
            if k != j:
                prod *= vals[:, k]
        y += np.bincount(edges[:, j], weights=prod, minlength=n)
    return y


def apply_adjacency(H: Hypergraph, x) -> np.ndarray:
    """Return ``A(H) x^{r-1}`` for a vector of length n."""
    x = _as_vector(H, x)
    return _apply(H.edge_array, H.n, x)


def edge_products(H: Hypergraph, x) -> np.ndarray:
    """``x^e = prod_{v in e} x_v`` for every edge, in edge order."""
    x = _as_vector(H, x)
    vals = x[H.edge_array]
    prod = np.ones(H.m)
    for k in range(H.r):
        prod *= vals[:, k]
    return prod


def r_norm(x, r: int) -> float:
    return float(np.sum(np.abs(x) ** r) ** (1.0 / r))


def rayleigh(H: Hypergraph, x) -> float:
    """``x^T (A x) = r * sum_e x^e`` for ``x`` on the unit r-norm sphere."""
    x = _as_vector(H, x)
    total = float(np.sum(np.abs(x) ** H.r))
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise NotNormalized(f"sum x_i^r = {total!r}, expected 1")
    return H.r * float(edge_products(H, x).sum())


def residual(H: Hypergraph, x, rho: float) -> float:
    """``max_i |(A x)_i - rho * x_i^{r-1}|``."""
    x = _as_vector(H, x)
    return float(np.max(np.abs(apply_adjacency(H, x) - rho * x ** (H.r - 1))))


@dataclass(frozen=True)
class IterationOptions:
    tolerance: float = 1e-12
    max_iterations: int = 100_000
    shift: float = 1.0
    initial: Optional[np.ndarray] = None  # None means the uniform vector

    def __post_init__(self):
        if not self.tolerance > 0:
            raise InvalidParameters(f"tolerance must be positive, got {self.tolerance}")
        if not self.shift >= 0:
            raise InvalidParameters(f"shift must be nonnegative, got {self.shift}")
        if self.max_iterations < 1:
            raise InvalidParameters("max_iterations must be >= 1")


@dataclass(frozen=True, eq=False)
class SpectralResult:
    """Converged Perron pair of a connected uniform hypergraph.

    ``lambda_lo``/``lambda_hi`` are the Collatz-Wielandt bounds
    ``min_i (Ax)_i / x_i^{r-1}`` and ``max_i (Ax)_i / x_i^{r-1}`` at the
    returned ``x``; they enclose the spectral radius.
    """

    rho: float
    x: np.ndarray
    residual_inf: float
    iterations: int
    lambda_lo: float
    lambda_hi: float
    r: int

    @property
    def x_max(self) -> float:
        return float(self.x.max())

    @property
    def x_min(self) -> float:
        return float(self.x.min())

    @property
    def argmax(self) -> int:
        return int(np.argmax(self.x))

    @property
    def argmin(self) -> int:
        return int(np.argmin(self.x))

    @property
    def bracket_width(self) -> float:
        return (self.lambda_hi - self.lambda_lo) / self.lambda_hi

    @property
    def principal_ratio(self) -> float:
        return self.x_max / self.x_min


def power_iteration(
    H: Hypergraph,
    opts: Optional[IterationOptions] = None,
    callback: Optional[Callable[[int, float, float], None]] = None,
) -> SpectralResult:
    """Shifted higher-order power method.

    Each step forms ``y = A x + s x^{[r-1]}`` and takes
    ``x <- y^{[1/(r-1)]}`` rescaled to unit r-norm. The iteration stops once
    the relative Collatz-Wielandt bracket width drops to ``opts.tolerance``.
    ``callback(k, lo, hi)`` is called with the unshifted bracket at every
    step.
    """
    opts = opts or IterationOptions()
    if H.m == 0:
        raise NoEdges("spectral radius needs at least one edge")
    if not is_connected(H):
        raise DisconnectedInput("power iteration needs a connected hypergraph")

    n, r, s = H.n, H.r, float(opts.shift)
    edges = H.edge_array
    if opts.initial is None:
        x = np.ones(n)
    else:
        x = _as_vector(H, opts.initial).copy()
        if not (x > 0).all():
            raise InvalidParameters("initial vector must be strictly positive")
    x /= r_norm(x, r)

    best = (0.0, np.inf)
    for k in range(opts.max_iterations):
        y = _apply(edges, n, x)
        xp = x ** (r - 1)
        ratios = y / xp
        lo, hi = float(ratios.min()), float(ratios.max())
        if callback is not None:
            callback(k, lo, hi)
        best = (max(best[0], lo), min(best[1], hi))
        if hi - lo <= opts.tolerance * hi:
            # Weighted mean of the ratios with weights x_i^r, so it sits
            # inside [lo, hi].
            rho = float(np.dot(x, y))
            rho = min(max(rho, lo), hi)
            res = float(np.max(np.abs(y - rho * xp)))
            return SpectralResult(rho, x, res, k, lo, hi, r)
        z = (y + s * xp) ** (1.0 / (r - 1))
        x = z / r_norm(z, r)

    raise MaxIterationsExceeded(opts.max_iterations, best[0], best[1], x)
