"""Immutable r-uniform hypergraphs, shadow graphs and BFS distances."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple, Optional

import numpy as np

from .errors import (
    DisconnectedInput,
    DuplicateEdge,
    EdgeIndexOutOfRange,
    EdgeWrongSize,
    InvalidParameters,
    VertexOutOfRange,
)

Edge = tuple[int, ...]


def _canonical_edge(raw, n: int, r: int) -> Edge:
    members = [int(v) for v in raw]
    edge = tuple(sorted(set(members)))
    if len(members) != r or len(edge) != r:
        raise EdgeWrongSize(f"edge {list(raw)!r} does not have {r} distinct vertices")
    if edge[0] < 0 or edge[-1] >= n:
        raise VertexOutOfRange(f"edge {list(raw)!r} has a vertex outside [0, {n})")
    return edge


@dataclass(frozen=True)
class Hypergraph:
    """An r-uniform hypergraph on vertices ``0..n-1``.

    Edges may be given in any order and with vertices in any order; the
    stored form is always a lexicographically sorted tuple of sorted tuples,
    so two hypergraphs with the same edge set compare equal.

    >>> Hypergraph(5, 3, [{2, 3, 4}, {0, 1, 2}]).edges
    ((0, 1, 2), (2, 3, 4))
    """

    n: int
    r: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if int(self.n) < 1:
            raise InvalidParameters(f"n must be >= 1, got {self.n}")
        if int(self.r) < 2:
            raise InvalidParameters(f"r must be >= 2, got {self.r}")
        n, r = int(self.n), int(self.r)
        canon = [_canonical_edge(e, n, r) for e in self.edges]
        seen = set()
        for e in canon:
            if e in seen:
                raise DuplicateEdge(f"edge {list(e)} appears more than once")
            seen.add(e)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """``incidence[v]`` lists the indices of the edges containing ``v``."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return tuple(tuple(lst) for lst in inc)

    @cached_property
    def edge_array(self) -> np.ndarray:
        """Edges as an ``(m, r)`` integer array (read-only)."""
        arr = np.array(self.edges, dtype=np.intp).reshape(self.m, self.r)
        arr.setflags(write=False)
        return arr

    def __repr__(self):
        return f"Hypergraph(n={self.n}, r={self.r}, m={self.m})"


def build(n: int, r: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
    return Hypergraph(n, r, tuple(tuple(e) for e in edges))


def degrees(H: Hypergraph) -> np.ndarray:
    return np.array([len(inc) for inc in H.incidence], dtype=np.int64)


def max_degree(H: Hypergraph) -> int:
    return int(degrees(H).max())


def min_degree(H: Hypergraph) -> int:
    return int(degrees(H).min())


def is_linear(H: Hypergraph) -> bool:
    """True iff any two edges share at most one vertex."""
    # Two edges sharing >= 2 vertices share some pair, so a repeated pair is
    # equivalent to non-linearity.
    seen = set()
    for e in H.edges:
        for pair in combinations(e, 2):
            if pair in seen:
                return False
            seen.add(pair)
    return True


@dataclass(frozen=True)
class ShadowGraph:
    """Simple graph joining two vertices when some edge contains both."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def edge_set(self) -> set[tuple[int, int]]:
        return {(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v}


def shadow(H: Hypergraph) -> ShadowGraph:
    adj: list[set[int]] = [set() for _ in range(H.n)]
    for e in H.edges:
        for u, v in combinations(e, 2):
            adj[u].add(v)
            adj[v].add(u)
    return ShadowGraph(H.n, tuple(tuple(sorted(a)) for a in adj))


def _check_vertex(H: Hypergraph, v: int) -> None:
    if not 0 <= v < H.n:
        raise VertexOutOfRange(f"vertex {v} not in [0, {H.n})")


def _bfs(adjacency, source: int) -> np.ndarray:
    dist = np.full(len(adjacency), -1, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in adjacency[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def distances_from(H: Hypergraph, source: int) -> np.ndarray:
    """BFS distances from ``source``; unreachable vertices get -1."""
    _check_vertex(H, source)
    return _bfs(shadow(H).adjacency, source)


def distance_matrix(H: Hypergraph) -> np.ndarray:
    """All-pairs distances as an ``(n, n)`` array, -1 where unreachable."""
    adj = shadow(H).adjacency
    return np.vstack([_bfs(adj, s) for s in range(H.n)])


def distance(H: Hypergraph, u: int, v: int) -> Optional[int]:
    """Length of a shortest u-v path, or ``None`` if v is unreachable from u."""
    _check_vertex(H, u)
    _check_vertex(H, v)
    d = int(distances_from(H, u)[v])
    return None if d < 0 else d


def is_connected(H: Hypergraph) -> bool:
    return bool((distances_from(H, 0) >= 0).all())


def diameter(H: Hypergraph) -> int:
    if not is_connected(H):
        raise DisconnectedInput("diameter is undefined for a disconnected hypergraph")
    return int(distance_matrix(H).max())


class Component(NamedTuple):
    """A connected component relabeled to ``0..k-1``.

    ``vertices[i]`` is the original id of component vertex ``i`` and
    ``edge_indices[j]`` the original index of component edge ``j``.
    """

    hypergraph: Hypergraph
    vertices: tuple[int, ...]
    edge_indices: tuple[int, ...]


def components(H: Hypergraph) -> list[Component]:
    """Connected components ordered by their smallest original vertex."""
    adj = shadow(H).adjacency
    label = np.full(H.n, -1, dtype=np.int64)
    groups: list[list[int]] = []
    for s in range(H.n):
        if label[s] >= 0:
            continue
        members = np.flatnonzero(_bfs(adj, s) >= 0)
        label[members] = len(groups)
        groups.append(members.tolist())

    per_group: list[list[int]] = [[] for _ in groups]
    for i, e in enumerate(H.edges):
        per_group[label[e[0]]].append(i)

    out = []
    for verts, eidx in zip(groups, per_group):
        relabel = {v: k for k, v in enumerate(verts)}
        sub = Hypergraph(
            len(verts), H.r, tuple(tuple(relabel[v] for v in H.edges[i]) for i in eidx)
        )
        out.append(Component(sub, tuple(verts), tuple(eidx)))
    return out


def delete_edge(H: Hypergraph, i: int) -> Hypergraph:
    if not 0 <= i < H.m:
        raise EdgeIndexOutOfRange(f"edge index {i} not in [0, {H.m})")
    return Hypergraph(H.n, H.r, H.edges[:i] + H.edges[i + 1 :])


def add_edge(H: Hypergraph, edge: Iterable[int]) -> Hypergraph:
    return Hypergraph(H.n, H.r, H.edges + (tuple(edge),))
