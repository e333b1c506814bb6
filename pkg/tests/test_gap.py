import math
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypereig.errors import DisconnectedInput, EdgeIndexOutOfRange, InvalidParameters
from hypereig.gap import (
    audit_edge_deletions,
    check_diameter_lemmas,
    gap_lower_bound,
    graph_gap_bound,
    spectral_radius_general,
)
from hypereig.generators import complete, loose_path, random_connected, single_edge
from hypereig.hypergraph import build, delete_edge, diameter, is_connected
from hypereig.spectral import power_iteration

from oracles import bfs_all_pairs, dense_power_iteration, dense_tensor

RHO_PATH = 2 ** (1 / 3)
PATH = loose_path(2, 3)
K43 = complete(4, 3)


@st.composite
def connected_instances(draw, rs=(2, 3, 4)):
    r = draw(st.sampled_from(rs))
    n = draw(st.integers(r, 12))
    lo = -(-(n - 1) // (r - 1))
    m = draw(st.integers(lo, min(comb(n, r), lo + 8)))
    return random_connected(n, r, m, seed=draw(st.integers(0, 2**32 - 1)))


def test_bound_loose_path():
    bound, t_conn, t_disc = gap_lower_bound(5, 3, 2, RHO_PATH)
    assert t_conn == pytest.approx(3 / (5 * 2**6), rel=1e-12)
    assert t_conn == pytest.approx(0.009375, rel=1e-12)
    # 1 / (5 * 4 * (2^{2/3} + 2))
    assert t_disc == pytest.approx(1 / (20 * (2 ** (2 / 3) + 2)), rel=1e-12)
    assert t_disc == pytest.approx(0.013937666649388945, rel=1e-12)
    assert bound == t_conn


def test_bound_trivial_single_edge():
    bound, t_conn, t_disc = gap_lower_bound(3, 3, 1, 1.0)
    assert t_conn == 1.0
    assert t_disc == pytest.approx(1 / 9)
    assert bound == t_disc


def test_bound_invalid():
    for args in [(2, 3, 1, 1.0), (5, 1, 1, 1.0), (5, 3, -1, 1.0), (5, 3, 1, 0.5)]:
        with pytest.raises(InvalidParameters):
            gap_lower_bound(*args)


@settings(max_examples=200)
@given(st.integers(2, 6), st.integers(0, 6), st.floats(1.0, 10.0), st.integers(0, 20))
def test_bound_positive_and_minimal(r, D, rho, extra):
    n = r + extra
    bound, a, b = gap_lower_bound(n, r, D, rho)
    assert bound == min(a, b) and bound > 0


def test_spectral_radius_general():
    assert spectral_radius_general(delete_edge(PATH, 1)) == pytest.approx(1.0, abs=1e-12)
    two = build(6, 3, [(0, 1, 2), (3, 4, 5)])
    assert spectral_radius_general(two) == pytest.approx(1.0, abs=1e-12)
    assert spectral_radius_general(PATH) == power_iteration(PATH).rho
    assert spectral_radius_general(delete_edge(single_edge(3), 0)) == 0.0
    mixed = build(7, 3, [(0, 1, 2), (3, 4, 5), (3, 4, 6), (3, 5, 6), (4, 5, 6)])
    assert spectral_radius_general(mixed) == pytest.approx(3.0, abs=1e-10)


def test_audit_loose_path():
    rep = audit_edge_deletions(PATH)
    assert rep.diameter == 2 and rep.rho == pytest.approx(RHO_PATH, abs=1e-12)
    assert len(rep.records) == 2 and rep.passed
    rec = rep.records[1]
    assert rec.edge == (2, 3, 4)
    assert rec.gap == pytest.approx(RHO_PATH - 1, abs=1e-10)
    assert rec.gap == pytest.approx(0.259921, abs=1e-6)
    assert rec.bound == pytest.approx(0.009375, rel=1e-12)
    assert not rec.connected_after and rec.component_count == 3
    assert not rec.lemmas.applicable and rec.lemmas.ok
    assert rep.n_disconnected == 2 and rep.n_connected == 0


def test_audit_complete():
    rep = audit_edge_deletions(K43)
    assert rep.passed and rep.n_connected == 4
    # oracle: dense power iteration on the three-edge remainder
    rho_sub, _ = dense_power_iteration(dense_tensor(delete_edge(K43, 0)))
    for rec in rep.records:
        assert rec.connected_after
        assert rec.rho_sub == pytest.approx(rho_sub, abs=1e-10)
        assert rec.gap == pytest.approx(3 - rho_sub, abs=1e-10)
        assert rec.gap == pytest.approx(0.71057151489, abs=1e-10)
        assert rec.bound == pytest.approx(1.41126e-6, rel=1e-5)
        assert rec.lemmas.diameter == 1 and rec.lemmas.diameter_bound == 6
        assert rec.lemmas.dist_sum == 3 and rec.lemmas.dist_sum_bound == 12
    gaps = {rec.gap for rec in rep.records}
    assert max(gaps) - min(gaps) <= 1e-12


def test_audit_single_edge():
    rep = audit_edge_deletions(single_edge(3))
    assert len(rep.records) == 1
    rec = rep.records[0]
    assert rec.rho_sub == 0.0 and rec.gap == pytest.approx(1.0, abs=1e-12) and rec.passed


def test_audit_rejects_disconnected():
    with pytest.raises(DisconnectedInput):
        audit_edge_deletions(build(6, 3, [(0, 1, 2), (3, 4, 5)]))


def test_lemmas_edge_index():
    with pytest.raises(EdgeIndexOutOfRange):
        check_diameter_lemmas(PATH, 5)


def test_lemmas_on_cycle_deletion():
    # dropping the transversal triple leaves a loose triangle
    H = build(6, 3, [(0, 1, 2), (2, 3, 4), (4, 5, 0), (1, 3, 5)])
    idx = H.edges.index((1, 3, 5))
    chk = check_diameter_lemmas(H, idx)
    assert chk.applicable and chk.ok
    dist = bfs_all_pairs(delete_edge(H, idx))
    assert chk.diameter == dist.max() == 2
    assert chk.dist_sum == max(dist[w, [1, 3, 5]].sum() for w in range(6)) == 4


@settings(max_examples=40, deadline=None)
@given(connected_instances())
def test_audit_passes_on_random_instances(H):
    rep = audit_edge_deletions(H)
    assert rep.passed
    D = diameter(H)
    for rec in rep.records:
        assert rec.gap > 1e-10
        assert rec.connected_after == is_connected(delete_edge(H, rec.edge_index))
        if rec.connected_after:
            dist = bfs_all_pairs(delete_edge(H, rec.edge_index))
            assert rec.lemmas.diameter == dist.max() <= H.r * (D + 1)
            assert rec.lemmas.dist_sum == dist[:, list(rec.edge)].sum(axis=1).max()


@settings(max_examples=30, deadline=None)
@given(connected_instances(rs=(2,)))
def test_graph_bound_cross_check(H):
    rep = audit_edge_deletions(H)
    ref = graph_gap_bound(H.n, rep.diameter, rep.rho)
    for rec in rep.records:
        if rec.connected_after:
            assert rec.gap >= ref - 1e-8


def test_both_cases_occur():
    conn = disc = 0
    for seed in range(20):
        rep = audit_edge_deletions(random_connected(9, 3, 6, seed=seed))
        conn += rep.n_connected
        disc += rep.n_disconnected
    assert conn > 0 and disc > 0


def test_gap_is_exact_difference():
    H = random_connected(8, 3, 6, seed=3)
    rep = audit_edge_deletions(H)
    for rec in rep.records:
        assert rec.gap == rep.rho - rec.rho_sub
        assert math.isclose(rec.slack, rec.gap - rec.bound)
    assert np.all([rec.edge == H.edges[rec.edge_index] for rec in rep.records])
