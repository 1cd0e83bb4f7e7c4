import math

import numpy as np
import pytest

from acgraph.distributions import NodeTypeDistribution
from acgraph.errors import DistributionError, TooSmallError
from acgraph.variant import (
    OutOutEdgeDistribution,
    generate_variant,
    plan_sizes_variant,
    required_variant_marginals,
    validate_variant_consistency,
    variant_edge_types,
    variant_summary,
)


def product_qv(P):
    source, target = required_variant_marginals(P)
    return OutOutEdgeDistribution(np.outer(source[1:], target))


def assortative_qv():
    """Out-out law for the two-type example concentrating on equal degrees."""
    q = np.zeros((4, 5))
    q[1, 2] = 1 / 3
    q[3, 4] = 2 / 3
    return OutOutEdgeDistribution(q)


def test_required_marginals_two_type_example(P05):
    source, target = required_variant_marginals(P05)
    np.testing.assert_allclose(source, [0, 0, 1 / 3, 0, 2 / 3], atol=1e-15)
    np.testing.assert_allclose(target, [0, 0, 1 / 3, 0, 2 / 3], atol=1e-15)
    assert validate_variant_consistency(P05, product_qv(P05)).ok
    assert validate_variant_consistency(P05, assortative_qv()).ok


def test_point_mass_only_consistent_law():
    P = NodeTypeDistribution.from_entries(1, 1, {(1, 1): 1.0})
    assert validate_variant_consistency(P, OutOutEdgeDistribution([[0.0, 1.0]])).ok
    assert not validate_variant_consistency(P, OutOutEdgeDistribution([[1.0, 0.0]])).ok


def test_moved_mass_reported(P05):
    q = assortative_qv().q.copy()
    q[1, 2] -= 0.1
    q[1, 4] += 0.1
    report = validate_variant_consistency(P05, OutOutEdgeDistribution(q))
    assert [k for k, _, _ in report.in_violations] == [2, 4]
    assert report.out_violations == []


def test_shape_checked():
    with pytest.raises(DistributionError):
        OutOutEdgeDistribution(np.full((2, 2), 0.25))


def test_plan_sizes_variant():
    assert math.ceil(1000**0.5001) == 32
    assert plan_sizes_variant(1000, 0.5001, 4, 3.0) == (728, 760)
    with pytest.raises(TooSmallError):
        plan_sizes_variant(100, 0.5001, 4, 3.0)


def test_fallback(P05):
    rejected = next(
        s for s in range(50) if not generate_variant(P05, product_qv(P05), 1000, seed=s).report.accepted
    )
    g = generate_variant(P05, product_qv(P05), 1000, seed=rejected)
    assert g.edges.tolist() == [[0, 1]]


def _tally_identities(g, K):
    k_src, k_tgt = variant_edge_types(g)
    for k in range(1, K + 1):
        assert np.sum(k_src == k) == k * np.sum(g.out_degree == k)
    for kk in range(K + 1):
        assert np.sum(k_tgt == kk) == g.in_degree[g.out_degree == kk].sum()


@pytest.mark.parametrize("make_q", [product_qv, lambda P: assortative_qv()])
def test_construction_identities(P05, make_q):
    Qv = make_q(P05)
    z, K = 3.0, 4
    for seed in range(10):
        g = generate_variant(P05, Qv, 2000, seed=seed, max_attempts=300)
        r = g.report
        assert r.accepted
        np.testing.assert_array_equal(g.realized_out_degree(), g.out_degree)
        np.testing.assert_array_equal(g.realized_in_degree(), g.in_degree)
        _tally_identities(g, K)
        k_e, kk_e = g.edge_types
        np.testing.assert_array_equal(k_e, g.out_degree[g.sources])
        np.testing.assert_array_equal(kk_e, g.out_degree[g.targets])
        nd = math.ceil(2000**0.5001)
        assert r.added_nodes <= K**2 + 2 * nd + 2 * z * nd
        # the gap per out-degree class can reach p(ceil(N^d) + N^d), hence 2z
        assert r.added_edges <= K**2 + 2 * z * K * nd
        assert np.all(r.e_plus[1:] >= r.n_plus[1:]) and np.all(r.e_minus >= r.n_minus)


def test_assortative_law_has_positive_assortativity(P05):
    g = generate_variant(P05, assortative_qv(), 5000, seed=1, max_attempts=300)
    s = variant_summary(g, P05, assortative_qv())
    assert s.rho_hat > 0.8


def test_variant_deterministic(P05):
    a = generate_variant(P05, product_qv(P05), 1500, seed=9, max_attempts=100)
    b = generate_variant(P05, product_qv(P05), 1500, seed=9, max_attempts=100)
    np.testing.assert_array_equal(a.edges, b.edges)


def test_variant_rejects_inconsistent(P05):
    with pytest.raises(DistributionError):
        generate_variant(P05, OutOutEdgeDistribution(np.full((4, 5), 0.05)), 1000, seed=0)
