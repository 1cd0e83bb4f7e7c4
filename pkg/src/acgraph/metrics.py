"""Empirical node/edge type frequencies and assortativity of a realised graph.

Types are always read from the graph's current node types, so the same code
serves generated multigraphs and their erased versions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import EdgeTypeDistribution, NodeTypeDistribution
from .graph import MultiDigraph


@dataclass(eq=False)
class EmpiricalSummary:
    """Relative type frequencies of one graph.

    ``p_hat[j, k]`` is the fraction of nodes of type ``(j, k)``; ``q_hat`` is
    laid out like the target edge-type matrix (``q_hat[k - 1, j - 1]`` for the
    in-degree edge types).  Both arrays are grown beyond the target shape if
    the graph has larger degrees.  ``rho_hat`` is ``None`` when undefined.
    ``node_counts`` and ``edge_counts`` hold the raw integer tallies.
    """

    n: int
    edge_count: int
    p_hat: np.ndarray
    q_hat: np.ndarray
    rho_hat: float | None
    deviation: float
    node_counts: np.ndarray
    edge_counts: np.ndarray

    def p_entries(self):
        return [(int(j), int(k), float(self.p_hat[j, k])) for j, k in zip(*np.nonzero(self.p_hat))]


def edge_types(g: MultiDigraph) -> tuple[np.ndarray, np.ndarray]:
    """Realised ``(k_v, j_w)`` for every edge ``v -> w``."""
    return g.out_degree[g.sources], g.in_degree[g.targets]


def pearson(x: np.ndarray, y: np.ndarray) -> float | None:
    """Population Pearson correlation of integer samples, ``None`` if undefined."""
    n = x.size
    if n == 0:
        return None
    x = x.astype(np.int64)
    y = y.astype(np.int64)
    # exact integer moments so that constant samples give exactly zero variance
    sx, sy = int(x.sum()), int(y.sum())
    sxx, syy, sxy = int(np.dot(x, x)), int(np.dot(y, y)), int(np.dot(x, y))
    var_x = n * sxx - sx * sx
    var_y = n * syy - sy * sy
    if var_x <= 0 or var_y <= 0:
        return None
    return float((n * sxy - sx * sy) / (np.sqrt(float(var_x)) * np.sqrt(float(var_y))))


def _padded(target: np.ndarray, shape: tuple[int, int]) -> np.ndarray:
    out = np.zeros(shape)
    out[: target.shape[0], : target.shape[1]] = target
    return out


def type_frequencies(
    g: MultiDigraph,
    P: np.ndarray,
    Q: np.ndarray,
    second: np.ndarray,
    second_offset: int,
) -> EmpiricalSummary:
    """Shared tally for any edge-type convention.

    Args:
        P: target node-type matrix.
        Q: target edge-type matrix, rows indexed by ``k - 1``.
        second: per-edge second type coordinate.
        second_offset: smallest admissible value of ``second`` (column 0).
    """
    first = g.out_degree[g.sources]
    shape_p = (
        max(P.shape[0], int(g.in_degree.max(initial=0)) + 1),
        max(P.shape[1], int(g.out_degree.max(initial=0)) + 1),
    )
    counts_p = np.zeros(shape_p, dtype=np.int64)
    np.add.at(counts_p, (g.in_degree, g.out_degree), 1)
    p_hat = counts_p / g.n

    E = g.num_edges
    shape_q = (
        max(Q.shape[0], int(first.max(initial=0))),
        max(Q.shape[1], int(second.max(initial=0)) - second_offset + 1),
    )
    counts_q = np.zeros(shape_q, dtype=np.int64)
    np.add.at(counts_q, (first - 1, second - second_offset), 1)
    q_hat = counts_q / E if E else np.zeros(shape_q)
    deviation = float(
        np.abs(p_hat - _padded(P, shape_p)).sum() + np.abs(q_hat - _padded(Q, shape_q)).sum()
    )
    return EmpiricalSummary(
        n=g.n,
        edge_count=E,
        p_hat=p_hat,
        q_hat=q_hat,
        rho_hat=pearson(first, second),
        deviation=deviation,
        node_counts=counts_p,
        edge_counts=counts_q,
    )


def empirical_summary(
    g: MultiDigraph, P: NodeTypeDistribution, Q: EdgeTypeDistribution
) -> EmpiricalSummary:
    """Node and edge type frequencies, empirical assortativity and the deviation.

    The deviation is the L1 distance between the empirical and target node-type
    laws plus that between the empirical and target edge-type laws.
    """
    if g.n == 0:
        raise ValueError("graph has no nodes")
    _, second = edge_types(g)
    return type_frequencies(g, P.p, Q.q, second, second_offset=1)


def sample_node_types(g: MultiDigraph, s: int, rng: np.random.Generator) -> np.ndarray:
    """Types ``(j, k)`` of ``s`` nodes drawn uniformly with replacement."""
    picks = rng.integers(0, g.n, size=s)
    return np.column_stack((g.in_degree[picks], g.out_degree[picks]))


def sample_edge_types(g: MultiDigraph, s: int, rng: np.random.Generator) -> np.ndarray:
    """Types ``(k, j)`` of ``s`` edges drawn uniformly with replacement.

    An edgeless graph yields ``s`` copies of ``(1, 1)``.
    """
    if g.num_edges == 0:
        return np.ones((s, 2), dtype=np.int64)
    picks = rng.integers(0, g.num_edges, size=s)
    k, j = edge_types(g)
    return np.column_stack((k[picks], j[picks]))
