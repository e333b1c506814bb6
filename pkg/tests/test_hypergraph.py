import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypereig import io
from hypereig.errors import (
    DisconnectedInput,
    DuplicateEdge,
    EdgeIndexOutOfRange,
    EdgeWrongSize,
    VertexOutOfRange,
)
from hypereig.generators import complete, loose_path, random_connected, random_uniform, single_edge
from hypereig.hypergraph import (
    Hypergraph,
    build,
    components,
    degrees,
    delete_edge,
    diameter,
    distance,
    distance_matrix,
    is_connected,
    is_linear,
    max_degree,
    min_degree,
    shadow,
)

PATH = build(5, 3, [{0, 1, 2}, {2, 3, 4}])
K43 = complete(4, 3)


def test_build_single_edge():
    H = build(3, 3, [{0, 1, 2}])
    assert H.edges == ((0, 1, 2),)
    assert degrees(H).tolist() == [1, 1, 1]


def test_build_loose_path_degrees():
    assert degrees(PATH).tolist() == [1, 1, 2, 1, 1]
    assert max_degree(PATH) == 2 and min_degree(PATH) == 1


def test_complete_degrees():
    assert degrees(K43).tolist() == [3, 3, 3, 3]


@pytest.mark.parametrize(
    "edges, exc",
    [
        ([{0, 1, 2}, {0, 1, 2}], DuplicateEdge),
        ([(0, 1, 2), (2, 1, 0)], DuplicateEdge),
        ([(0, 1)], EdgeWrongSize),
        ([(0, 0, 1)], EdgeWrongSize),
        ([(0, 1, 4)], VertexOutOfRange),
        ([(-1, 1, 2)], VertexOutOfRange),
    ],
)
def test_build_rejects(edges, exc):
    with pytest.raises(exc):
        build(4, 3, edges)


def test_canonical_form_ignores_order():
    a = build(5, 3, [(4, 3, 2), (2, 0, 1)])
    assert a == PATH
    assert a.edges == ((0, 1, 2), (2, 3, 4))


def test_incidence_lists():
    assert PATH.incidence == ((0,), (0,), (0, 1), (1,), (1,))


def test_linearity():
    assert is_linear(PATH)
    assert not is_linear(K43)
    assert is_linear(single_edge(3))


def test_shadow():
    assert shadow(single_edge(3)).edge_set() == {(0, 1), (0, 2), (1, 2)}
    assert shadow(PATH).edge_set() == {(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)}
    empty = Hypergraph(4, 3)
    assert shadow(empty).adjacency == ((), (), (), ())


def test_distance():
    assert distance(PATH, 0, 4) == 2
    assert distance(PATH, 3, 3) == 0
    two = build(6, 3, [(0, 1, 2), (3, 4, 5)])
    assert distance(two, 0, 5) is None
    with pytest.raises(VertexOutOfRange):
        distance(PATH, 0, 5)


def test_diameter_and_connectivity():
    assert diameter(K43) == 1
    assert diameter(PATH) == 2
    sub = delete_edge(PATH, 1)
    assert not is_connected(sub)
    with pytest.raises(DisconnectedInput):
        diameter(sub)


def test_components_after_deletion():
    comps = components(delete_edge(PATH, 1))
    assert [c.vertices for c in comps] == [(0, 1, 2), (3,), (4,)]
    assert comps[0].hypergraph.edges == ((0, 1, 2),)
    assert [c.hypergraph.m for c in comps] == [1, 0, 0]


def test_components_relabel():
    H = build(6, 2, [(1, 4), (4, 5), (0, 2)])
    comps = components(H)
    assert [c.vertices for c in comps] == [(0, 2), (1, 4, 5), (3,)]
    assert comps[1].hypergraph.edges == ((0, 1), (1, 2))
    assert comps[1].edge_indices == (1, 2)


def test_delete_edge():
    assert delete_edge(single_edge(3), 0) == Hypergraph(3, 3)
    sub = delete_edge(PATH, 1)
    assert sub.edges == ((0, 1, 2),) and sub.n == 5
    for i in range(K43.m):
        rest = delete_edge(K43, i)
        assert rest.m == 3 and is_connected(rest)
    with pytest.raises(EdgeIndexOutOfRange):
        delete_edge(PATH, 2)


def test_generators():
    assert loose_path(2, 3) == PATH
    assert complete(4, 3).m == 4
    a = random_uniform(8, 3, 6, seed=7)
    b = random_uniform(8, 3, 6, seed=7)
    assert a == b and a.m == 6
    assert is_linear(loose_path(5, 4))
    assert not is_linear(complete(5, 3))


# ---- properties over small generated instances -------------------------------------------

@st.composite
def small_hypergraphs(draw):
    r = draw(st.integers(2, 4))
    n = draw(st.integers(r, 10))
    total = comb(n, r)
    m = draw(st.integers(0, min(total, 25)))
    return random_uniform(n, r, m, seed=draw(st.integers(0, 2**32 - 1)))


@settings(max_examples=60, deadline=None)
@given(small_hypergraphs())
def test_distance_is_metric(H):
    D = distance_matrix(H)
    n = H.n
    assert (np.diag(D) == 0).all()
    assert (D == D.T).all()
    for u, v, w in itertools.product(range(n), repeat=3):
        if D[u, v] >= 0 and D[v, w] >= 0:
            assert 0 <= D[u, w] <= D[u, v] + D[v, w]


@settings(max_examples=60, deadline=None)
@given(small_hypergraphs())
def test_adjacent_vertices_at_distance_one(H):
    D = distance_matrix(H)
    for e in H.edges:
        for u, v in itertools.combinations(e, 2):
            assert D[u, v] == 1


@settings(max_examples=60, deadline=None)
@given(small_hypergraphs())
def test_components_partition(H):
    comps = components(H)
    seen = sorted(v for c in comps for v in c.vertices)
    assert seen == list(range(H.n))
    assert sum(c.hypergraph.m for c in comps) == H.m
    for c in comps:
        assert is_connected(c.hypergraph)


@settings(max_examples=60, deadline=None)
@given(small_hypergraphs())
def test_serialization_round_trip(H):
    again = io.parse(io.serialize(H))
    assert again == H
    assert io.serialize(again) == io.serialize(H)


@settings(max_examples=60, deadline=None)
@given(small_hypergraphs())
def test_incidence_matches_degrees(H):
    for v in range(H.n):
        assert set(H.incidence[v]) == {i for i, e in enumerate(H.edges) if v in e}
    assert degrees(H).sum() == H.m * H.r


@pytest.mark.parametrize("n,r", [(5, 3), (6, 4), (7, 3), (9, 5)])
def test_complete_not_linear(n, r):
    assert not is_linear(complete(n, r))


def test_graphs_are_always_linear():
    # two distinct 2-sets share at most one vertex
    assert is_linear(complete(7, 2))


def test_random_connected_is_connected():
    for seed in range(20):
        assert is_connected(random_connected(10, 3, 6, seed=seed))
