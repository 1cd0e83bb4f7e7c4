import numpy as np
import pytest

from acgraph.copula import calibrate_lambda
from acgraph.erasure import erase, first_copies, is_simple
from acgraph.generator import fallback_graph, generate
from acgraph.graph import MultiDigraph


def test_lone_self_loop():
    g = MultiDigraph.from_edges(1, [(0, 0)])
    h, rep = erase(g)
    assert h.num_edges == 0
    assert rep.self_loops_removed == 1 and rep.excess_parallel_removed == 0
    assert h.node_types.tolist() == [[0, 0]]


def test_triple_parallel_edge():
    g = MultiDigraph.from_edges(2, [(0, 1)] * 3)
    h, rep = erase(g)
    assert h.edges.tolist() == [[0, 1]]
    assert rep.excess_parallel_removed == 2 and rep.multi_pairs == 1
    assert g.out_degree[0] - h.out_degree[0] == 2


def test_first_copy_survives_in_order():
    g = MultiDigraph.from_edges(3, [(1, 2), (0, 1), (2, 2), (1, 2), (0, 1), (2, 0)])
    h, rep = erase(g)
    assert h.edges.tolist() == [[1, 2], [0, 1], [2, 0]]
    assert rep.edges_after == rep.edges_before - rep.self_loops_removed - rep.excess_parallel_removed


def test_is_simple_examples():
    assert not is_simple(MultiDigraph.from_edges(1, [(0, 0)]))
    assert is_simple(MultiDigraph.from_edges(2, [(0, 1), (1, 0)]))
    assert not is_simple(MultiDigraph.from_edges(2, [(0, 1), (0, 1)]))
    assert is_simple(fallback_graph(5))


def test_erased_generated_graph(P05):
    _, Q = calibrate_lambda(P05, 1.0)
    g = generate(P05, Q, 2000, seed=3, max_attempts=200)
    h, rep = erase(g)
    assert is_simple(h)
    assert rep.edges_after == g.num_edges - rep.self_loops_removed - rep.excess_parallel_removed
    assert np.all(h.out_degree <= g.out_degree) and np.all(h.in_degree <= g.in_degree)
    h2, rep2 = erase(h)
    assert rep2.self_loops_removed == rep2.excess_parallel_removed == 0
    np.testing.assert_array_equal(h2.edges, h.edges)


def test_erased_fraction_shrinks_with_size(P05):
    _, Q = calibrate_lambda(P05, 0.8)

    def lost(n):
        fr = []
        for s in range(30):
            _, rep = erase(generate(P05, Q, n, seed=s, max_attempts=500))
            fr.append(1 - rep.edges_after / rep.edges_before)
        return np.mean(fr)

    assert lost(10_000) < lost(1_000)


def test_packed_and_unique_paths_agree():
    rng = np.random.default_rng(3)
    n = 40
    edges = rng.integers(0, n, size=(500, 2))
    h, rep = erase(MultiDigraph.from_edges(n, edges))
    expected, seen = [], set()
    for s, t in edges.tolist():
        if s != t and (s, t) not in seen:
            seen.add((s, t))
            expected.append([s, t])
    assert h.edges.tolist() == expected
    assert rep.multi_pairs == sum(
        1 for pair in seen if sum(1 for e in edges.tolist() if tuple(e) == pair) > 1
    )


def test_first_copies_fallback_path():
    keys = np.array([7, 3, 7, 2**61, 3, 3])
    for n in (10, 2**31):  # packed path, then np.unique path
        first, mult = first_copies(keys if n > 10 else keys % 100, n)
        assert mult.tolist() == [3, 2, 1]
        assert first.tolist() == [1, 0, 3]
