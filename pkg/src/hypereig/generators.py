"""Deterministic hypergraph families used by tests, examples and the CLI."""

from __future__ import annotations

from itertools import combinations
from math import comb

import numpy as np

from .errors import InfeasibleParameters
from .hypergraph import Hypergraph, is_connected

# Above this many candidate edges, sampling switches from enumeration to
# rejection.
_ENUMERATION_LIMIT = 200_000


def single_edge(r: int) -> Hypergraph:
    if r < 2:
        raise InfeasibleParameters(f"r must be >= 2, got {r}")
    return Hypergraph(r, r, (tuple(range(r)),))


def complete(n: int, r: int) -> Hypergraph:
    """All r-subsets of ``n`` vertices."""
    if r < 2 or n < r:
        raise InfeasibleParameters(f"complete({n}, {r}) needs n >= r >= 2")
    return Hypergraph(n, r, tuple(combinations(range(n), r)))


def loose_path(k: int, r: int) -> Hypergraph:
    """k edges in a row, consecutive edges sharing exactly one vertex."""
    if k < 1 or r < 2:
        raise InfeasibleParameters(f"loose_path({k}, {r}) needs k >= 1, r >= 2")
    step = r - 1
    edges = tuple(tuple(range(i * step, i * step + r)) for i in range(k))
    return Hypergraph(k * step + 1, r, edges)


def random_uniform(n: int, r: int, m: int, seed=None) -> Hypergraph:
    """``m`` distinct edges drawn uniformly at random; same seed, same edges."""
    if r < 2 or n < r:
        raise InfeasibleParameters(f"random_uniform needs n >= r >= 2, got n={n}, r={r}")
    total = comb(n, r)
    if not 0 <= m <= total:
        raise InfeasibleParameters(f"cannot draw {m} distinct edges out of C({n},{r})={total}")
    rng = np.random.default_rng(seed)
    if total <= _ENUMERATION_LIMIT:
        pool = list(combinations(range(n), r))
        picks = rng.choice(total, size=m, replace=False)
        edges = [pool[i] for i in sorted(picks)]
    else:
        chosen: set[tuple[int, ...]] = set()
        while len(chosen) < m:
            chosen.add(tuple(sorted(rng.choice(n, size=r, replace=False).tolist())))
        edges = sorted(chosen)
    return Hypergraph(n, r, tuple(edges))


def random_connected(n: int, r: int, m: int, seed=None, max_attempts: int = 1000) -> Hypergraph:
    """Like :func:`random_uniform`, redrawing until the result is connected."""
    if n > 1 and m * (r - 1) < n - 1:
        raise InfeasibleParameters(f"{m} edges of size {r} cannot connect {n} vertices")
    rng = np.random.default_rng(seed)
    for _ in range(max_attempts):
        H = random_uniform(n, r, m, seed=rng)
        if is_connected(H):
            return H
    raise InfeasibleParameters(
        f"no connected sample in {max_attempts} attempts for n={n}, r={r}, m={m}"
    )


def random_linear(n: int, r: int, extra: int = 0, seed=None, max_attempts: int = 200) -> Hypergraph:
    """A random connected linear hypergraph on ``n`` vertices.

    A random loose tree is grown first, each new edge attaching to one
    already covered vertex. Up to ``extra`` further edges are then added
    wherever linearity allows.
    """
    if r < 2 or n < r:
        raise InfeasibleParameters(f"random_linear needs n >= r >= 2, got n={n}, r={r}")
    rng = np.random.default_rng(seed)
    for _ in range(max_attempts):
        edges = _grow_linear(n, r, extra, rng)
        if edges is not None:
            return Hypergraph(n, r, tuple(edges))
    raise InfeasibleParameters(f"could not grow a connected linear {r}-graph on {n} vertices")


def _grow_linear(n, r, extra, rng):
    used_pairs: set[tuple[int, int]] = set()
    edges: list[tuple[int, ...]] = []

    def fits(e):
        return not any(p in used_pairs for p in combinations(e, 2))

    def take(e):
        edges.append(e)
        used_pairs.update(combinations(e, 2))

    order = rng.permutation(n).tolist()
    take(tuple(sorted(order[:r])))
    covered = set(order[:r])
    uncovered = order[r:]
    while uncovered:
        anchor = int(rng.choice(sorted(covered)))
        fresh = uncovered[: r - 1]
        pad = r - 1 - len(fresh)
        if pad:
            # Not enough new vertices left: borrow covered ones, keeping linearity.
            others = [v for v in sorted(covered) if v != anchor]
            if len(others) < pad:
                return None
            fill = rng.choice(others, size=pad, replace=False).tolist()
            e = tuple(sorted([anchor, *fresh, *fill]))
        else:
            e = tuple(sorted([anchor, *fresh]))
        if not fits(e):
            return None
        take(e)
        covered.update(fresh)
        uncovered = uncovered[len(fresh):]

    tries = 0
    added = 0
    while added < extra and tries < 50 * (extra + 1):
        tries += 1
        e = tuple(sorted(rng.choice(n, size=r, replace=False).tolist()))
        if fits(e):
            take(e)
            added += 1
    return edges
