import numpy as np
import pytest
from scipy import stats

from acgraph.copula import calibrate_lambda
from acgraph.distributions import EdgeTypeDistribution, NodeTypeDistribution
from acgraph.erasure import erase
from acgraph.generator import fallback_graph, generate
from acgraph.graph import MultiDigraph
from acgraph.metrics import (
    empirical_summary,
    pearson,
    sample_edge_types,
    sample_node_types,
)
from conftest import random_instance


def test_fallback_summary(P05, Q_indep):
    n = 50
    s = empirical_summary(fallback_graph(n), P05, Q_indep)
    assert s.p_hat[0, 1] == s.p_hat[1, 0] == 1 / n
    assert s.p_hat[0, 0] == (n - 2) / n
    assert s.q_hat[0, 0] == 1.0 and s.q_hat.sum() == 1.0
    assert s.rho_hat is None


def test_permutation_digraph_summary():
    P = NodeTypeDistribution.from_entries(1, 1, {(1, 1): 1.0})
    Q = EdgeTypeDistribution([[1.0]])
    g = generate(P, Q, 200, seed=0)
    s = empirical_summary(g, P, Q)
    assert s.q_hat.tolist() == [[1.0]]
    assert s.rho_hat is None


def test_pearson_matches_numpy():
    rng = np.random.default_rng(0)
    x = rng.integers(1, 5, 500)
    y = x + rng.integers(0, 3, 500)
    assert pearson(x, y) == pytest.approx(np.corrcoef(x, y)[0, 1], abs=1e-12)
    assert pearson(np.ones(4, int), y[:4]) is None
    assert pearson(np.array([], int), np.array([], int)) is None


def test_deviation_bounds_random_graphs():
    rng = np.random.default_rng(7)
    for _ in range(15):
        P, Q, _ = random_instance(rng)
        g = generate(P, Q, 1500, delta=0.75, seed=int(rng.integers(2**32)), max_attempts=200)
        for graph in (g, erase(g)[0]):
            s = empirical_summary(graph, P, Q)
            assert 0 <= s.deviation <= 4
            assert s.p_hat.sum() == pytest.approx(1.0)
            if s.edge_count:
                assert s.q_hat.sum() == pytest.approx(1.0)


def test_edge_tallies_match_sampled_types(P05):
    _, Q = calibrate_lambda(P05, 0.4)
    g = generate(P05, Q, 3000, seed=1, max_attempts=500)
    assert g.report.accepted
    s = empirical_summary(g, P05, Q)
    k_e, j_e = g.edge_types
    tally = np.zeros_like(s.edge_counts)
    np.add.at(tally, (k_e - 1, j_e - 1), 1)
    np.testing.assert_array_equal(s.edge_counts, tally)
    np.testing.assert_allclose(s.q_hat, tally / g.num_edges, rtol=0, atol=1e-15)


def test_sample_single_node_graph():
    g = MultiDigraph.from_edges(1, [(0, 0), (0, 0)])
    draws = sample_node_types(g, 20, np.random.default_rng(0))
    assert np.all(draws == [2, 2])


def test_sample_edges_of_empty_graph():
    g = MultiDigraph.from_edges(3, [])
    assert sample_edge_types(g, 5, np.random.default_rng(0)).tolist() == [[1, 1]] * 5


def test_sampled_node_types_fit_target(P05):
    """Uniformly sampled node types follow P up to the reserve nodes.

    Off-support types can only sit on the ``N - N'`` reserve nodes; among
    on-support draws the type proportions are tested by chi-square.
    """
    _, Q = calibrate_lambda(P05, 0.8)
    n, s = 10_000, 10_000
    passed = 0
    for seed in range(10):
        g = generate(P05, Q, n, seed=seed, max_attempts=500)
        draws = sample_node_types(g, s, np.random.default_rng(seed))
        on = np.all(draws == [2, 2], axis=1) | np.all(draws == [4, 4], axis=1)
        reserve_fraction = (n - g.report.n_prime) / n
        observed_off = np.mean(~on)
        # binomial 5-sigma allowance on top of the hard reserve bound
        assert observed_off <= reserve_fraction + 5 * np.sqrt(reserve_fraction / s)
        c22 = int(np.sum(np.all(draws[on] == [2, 2], axis=1)))
        res = stats.chisquare([c22, on.sum() - c22], [on.sum() / 2, on.sum() / 2])
        passed += res.pvalue > 0.01
    assert passed > 5
