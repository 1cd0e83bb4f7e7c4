"""Directed assortative configuration graphs.

The construction samples node types from P and, independently, edge types
from Q, accepts the sample only if every per-degree tally is close to its
expectation, repairs the remaining count mismatches deterministically on a
reserve of undetermined nodes, and finally attaches edges to nodes by a
uniform random matching within each degree group.

Random stream order (part of the reproducibility contract):

1. node types of the first ``n_prime`` nodes,
2. edge types of the ``ceil(z * n_doubleprime)`` sampled edges,
3. one permutation per out-degree group, increasing ``k``,
4. one permutation per in-degree group, increasing ``j``.

A rejected attempt consumes steps 1 and 2 only; retries continue on the same
stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import (
    CONSISTENCY_TOL,
    EdgeTypeDistribution,
    NodeTypeDistribution,
    marginals,
    mean_degree,
    validate_consistency,
)
from .errors import CapacityError, DistributionError, MatchError, TooSmallError
from .graph import GenerationReport, MultiDigraph
from .sampling import AliasTable

DEFAULT_DELTA = 0.5001

# z * n'' is an integer for integral z; keep float noise from bumping the ceiling
_CEIL_SLACK = 1e-9


def ceil_safe(x: float) -> int:
    return math.ceil(x - _CEIL_SLACK)


def make_rng(seed) -> tuple[np.random.Generator, int | None]:
    if isinstance(seed, np.random.Generator):
        return seed, None
    if seed is None:
        seed = int(np.random.SeedSequence().generate_state(1, np.uint64)[0])
    return np.random.default_rng(int(seed)), int(seed)


def _check_delta(delta: float) -> None:
    if not 0.5 < delta < 1.0:
        raise ValueError(f"delta must lie in the open interval (1/2, 1), got {delta}")


def plan_sizes(N: int, delta: float, J: int, K: int) -> tuple[int, int]:
    """Return ``(n_prime, n_doubleprime)``.

    ``n_prime`` nodes get types from P; the remaining
    ``2 * ceil(N**delta) + max(J**2, K**2)`` are held in reserve.

    Raises:
        TooSmallError: ``n_prime < 1``; the message names the smallest feasible N.
    """
    _check_delta(delta)
    n_delta = math.ceil(N**delta)
    reserve = 2 * n_delta + max(J * J, K * K)
    n_prime = N - reserve
    if n_prime < 1:
        raise TooSmallError(
            f"N={N} too small for delta={delta}, J={J}, K={K}; "
            f"need N >= {_min_feasible(lambda m: m - 2 * math.ceil(m**delta) - max(J * J, K * K))}"
        )
    return n_prime, n_prime + n_delta


def _min_feasible(n_prime_of, window: int = 100_000) -> int:
    """Smallest N from which on every size is feasible.

    ``n_prime_of`` is not monotone: it drops by one or two whenever
    ``ceil(N**delta)`` steps up.  A bisection on the trend finds the first
    feasible size; the next ``window`` sizes are then scanned for dips.
    """
    hi = 2
    while n_prime_of(hi) < 1:
        hi *= 2
    lo = hi // 2
    while lo < hi:
        mid = (lo + hi) // 2
        if n_prime_of(mid) >= 1:
            hi = mid
        else:
            lo = mid + 1
    last_bad = lo - 1
    for m in range(lo, lo + window):
        n_prime = n_prime_of(m)
        if n_prime < 1:
            last_bad = m
        elif n_prime >= 100:
            break
    return last_bad + 1


@dataclass(eq=False)
class TypeCounts:
    """Per-degree tallies of one sampling round, all indexed by degree.

    ``edge_plus[k]`` counts sampled edges with source out-degree ``k`` and
    ``e_plus[k] = ceil(edge_plus[k] / k)``; likewise for the in-side.
    """

    n_plus: np.ndarray
    n_minus: np.ndarray
    edge_plus: np.ndarray
    edge_minus: np.ndarray
    e_plus: np.ndarray
    e_minus: np.ndarray


def _ceil_div(counts: np.ndarray) -> np.ndarray:
    degrees = np.arange(counts.size)
    out = np.zeros_like(counts)
    out[1:] = -(-counts[1:] // degrees[1:])
    return out


def sample_types(
    P: NodeTypeDistribution,
    Q: EdgeTypeDistribution,
    n_prime: int,
    n_doubleprime: int,
    rng: np.random.Generator,
    z: float | None = None,
    tables: tuple[AliasTable, AliasTable] | None = None,
):
    """Draw ``n_prime`` i.i.d. node types from P, then ``ceil(z n'')`` edge types from Q.

    Returns:
        ``(node_in, node_out, edge_k, edge_j, counts)``.
    """
    if z is None:
        z = mean_degree(P)
    node_table, edge_table = tables or (AliasTable(P.p), AliasTable(Q.q))
    m = ceil_safe(z * n_doubleprime)

    flat = node_table.sample(rng, n_prime)
    node_in, node_out = np.divmod(flat, P.K + 1)
    flat = edge_table.sample(rng, m)
    edge_k, edge_j = np.divmod(flat, Q.J)
    edge_k += 1
    edge_j += 1

    edge_plus = np.bincount(edge_k, minlength=P.K + 1)
    edge_minus = np.bincount(edge_j, minlength=P.J + 1)
    counts = TypeCounts(
        n_plus=np.bincount(node_out, minlength=P.K + 1),
        n_minus=np.bincount(node_in, minlength=P.J + 1),
        edge_plus=edge_plus,
        edge_minus=edge_minus,
        e_plus=_ceil_div(edge_plus),
        e_minus=_ceil_div(edge_minus),
    )
    return node_in, node_out, edge_k, edge_j, counts


def _within(observed, expected_rate, size, half_width_scale) -> bool:
    observed = np.asarray(observed, dtype=float)
    return bool(
        np.all(np.abs(observed - expected_rate * size) <= expected_rate * half_width_scale / 2)
    )


def check_acceptance(
    counts: TypeCounts,
    P: NodeTypeDistribution,
    n_prime: int,
    n_doubleprime: int,
    n_delta: float,
) -> bool:
    """Whether every node and edge tally lies within ``p * N**delta / 2`` of its mean.

    ``n_delta`` is ``N**delta`` (not rounded).  Degrees with zero probability
    force the corresponding tallies to be exactly zero.
    """
    p_minus, p_plus = marginals(P)
    return (
        _within(counts.n_plus[1:], p_plus[1:], n_prime, n_delta)
        and _within(counts.e_plus[1:], p_plus[1:], n_doubleprime, n_delta)
        and _within(counts.n_minus[1:], p_minus[1:], n_prime, n_delta)
        and _within(counts.e_minus[1:], p_minus[1:], n_doubleprime, n_delta)
    )


def correct_cardinalities(edge_k: np.ndarray, edge_j: np.ndarray, counts: TypeCounts):
    """Pad each out-degree (in-degree) edge group up to a multiple of its degree.

    Appends ``k * e_plus[k] - edge_plus[k]`` edges of type ``(k, 1)`` for each
    ``k``, then ``j * e_minus[j] - edge_minus[j]`` edges of type ``(1, j)`` for
    each ``j``.

    Returns:
        ``(edge_k, edge_j, r_plus, r_minus)`` with the padded type arrays.
    """
    ks = np.arange(counts.e_plus.size)
    js = np.arange(counts.e_minus.size)
    r_plus_k = ks * counts.e_plus - counts.edge_plus
    r_minus_j = js * counts.e_minus - counts.edge_minus
    r_plus_k[0] = 0
    r_minus_j[0] = 0
    pad_plus = np.repeat(ks, r_plus_k)
    pad_minus = np.repeat(js, r_minus_j)
    new_k = np.concatenate((edge_k, pad_plus, np.ones(pad_minus.size, dtype=edge_k.dtype)))
    new_j = np.concatenate((edge_j, np.ones(pad_plus.size, dtype=edge_j.dtype), pad_minus))
    return new_k, new_j, int(r_plus_k.sum()), int(r_minus_j.sum())


def _fill_reserve(needed: np.ndarray, reserve: int, side: str) -> np.ndarray:
    if np.any(needed < 0):
        bad = int(np.flatnonzero(needed < 0)[0])
        raise CapacityError(f"{side}-degree {bad} needs {needed[bad]} reserve nodes")
    total = int(needed.sum())
    if total > reserve:
        raise CapacityError(f"{side}-degree completion needs {total} nodes, reserve has {reserve}")
    filled = np.zeros(reserve, dtype=np.int64)
    filled[:total] = np.repeat(np.arange(needed.size), needed)
    return filled


def complete_degrees(
    node_in: np.ndarray,
    node_out: np.ndarray,
    counts: TypeCounts,
    r_plus: int,
    r_minus: int,
    N: int,
    n_prime: int,
):
    """Assign degrees to the reserve nodes ``n_prime .. N - 1``.

    Reserve nodes start as ``(0, 0)``.  For increasing ``k`` the next
    ``e_plus[k] - n_plus[k]`` (plus ``r_minus`` when ``k == 1``) reserve nodes
    get out-degree ``k``; in-degrees are filled the same way, independently.

    Returns:
        ``(node_in, node_out)`` of length ``N``.
    """
    need_out = counts.e_plus - counts.n_plus
    need_in = counts.e_minus - counts.n_minus
    need_out[0] = 0
    need_in[0] = 0
    if need_out.size > 1:
        need_out[1] += r_minus
    if need_in.size > 1:
        need_in[1] += r_plus
    reserve = N - n_prime
    full_out = np.concatenate((node_out, _fill_reserve(need_out, reserve, "out")))
    full_in = np.concatenate((node_in, _fill_reserve(need_in, reserve, "in")))
    return full_in, full_out


def _group_by_degree(degree, max_degree):
    """Indices of each degree class ``0 .. max_degree``, increasing within a class."""
    # stable sort of a 16-bit key is a radix sort: one linear pass
    order = np.argsort(degree.astype(np.uint16), kind="stable")
    bounds = np.cumsum(np.bincount(degree, minlength=max_degree + 1))
    return np.split(order, bounds[:-1])


def _deal(node_degree, edge_degree, max_degree, rng, side):
    slots = np.empty(edge_degree.size, dtype=np.int64)
    if max_degree >= 2**16:
        raise MatchError(f"{side}-degree {max_degree} too large")
    edge_groups = _group_by_degree(edge_degree, max_degree)
    node_groups = _group_by_degree(node_degree, max_degree)
    for d in range(1, max_degree + 1):
        group_edges, group_nodes = edge_groups[d], node_groups[d]
        if group_edges.size != d * group_nodes.size:
            raise MatchError(
                f"{side}-degree {d}: {group_edges.size} edges for {group_nodes.size} nodes"
            )
        slots[rng.permutation(group_edges)] = np.repeat(group_nodes, d)
    return slots


def match_halfedges(
    node_in: np.ndarray,
    node_out: np.ndarray,
    edge_k: np.ndarray,
    edge_j: np.ndarray,
    rng: np.random.Generator,
):
    """Attach every edge to a source and a target of matching degree.

    Within each out-degree group ``k`` the edges are shuffled uniformly and
    handed out ``k`` at a time to the nodes of out-degree ``k`` in index
    order; in-degree groups are handled the same way afterwards.

    Returns:
        ``(sources, targets)``; self-loops and parallel edges may occur.
    """
    K = int(max(node_out.max(initial=0), edge_k.max(initial=0)))
    J = int(max(node_in.max(initial=0), edge_j.max(initial=0)))
    if np.any(edge_k < 1) or np.any(edge_j < 1):
        raise MatchError("edge types must have positive degrees")
    sources = _deal(node_out, edge_k, K, rng, "out")
    targets = _deal(node_in, edge_j, J, rng, "in")
    return sources, targets


def fallback_graph(N: int, report: GenerationReport | None = None) -> MultiDigraph:
    """Deterministic single-edge graph ``0 -> 1`` with all other nodes isolated."""
    if N < 2:
        raise TooSmallError("fallback graph needs at least 2 nodes")
    in_degree = np.zeros(N, dtype=np.int64)
    out_degree = np.zeros(N, dtype=np.int64)
    out_degree[0] = 1
    in_degree[1] = 1
    return MultiDigraph(
        in_degree=in_degree,
        out_degree=out_degree,
        sources=np.array([0], dtype=np.int64),
        targets=np.array([1], dtype=np.int64),
        report=report,
        edge_types=(np.array([1]), np.array([1])),
    )


def generate(
    P: NodeTypeDistribution,
    Q: EdgeTypeDistribution,
    N: int,
    delta: float = DEFAULT_DELTA,
    seed=None,
    max_attempts: int = 1,
) -> MultiDigraph:
    """Generate a directed assortative configuration multigraph on ``N`` nodes.

    Args:
        P: node-type distribution.
        Q: edge-type distribution consistent with ``P``.
        N: number of nodes.
        delta: reserve exponent in (1/2, 1).
        seed: integer seed or a ``numpy.random.Generator``.
        max_attempts: sampling rounds tried before falling back to the
            single-edge graph.  The default of 1 returns the fallback graph
            as soon as the first sample is rejected.

    Returns:
        The generated graph; ``graph.report`` records which path was taken.
    """
    report_consistency = validate_consistency(P, Q, CONSISTENCY_TOL)
    if not report_consistency.ok:
        raise DistributionError(f"P and Q are inconsistent: {report_consistency.describe()}")
    if max_attempts < 1:
        raise ValueError("max_attempts must be at least 1")
    rng, seed_value = make_rng(seed)
    z = mean_degree(P)
    n_prime, n_doubleprime = plan_sizes(N, delta, P.J, P.K)
    n_delta = N**delta
    tables = (AliasTable(P.p), AliasTable(Q.q))

    report = GenerationReport(
        accepted=False,
        n=N,
        n_prime=n_prime,
        n_doubleprime=n_doubleprime,
        delta=delta,
        edge_sample_count=ceil_safe(z * n_doubleprime),
        seed=seed_value,
    )
    for attempt in range(1, max_attempts + 1):
        node_in, node_out, edge_k, edge_j, counts = sample_types(
            P, Q, n_prime, n_doubleprime, rng, z=z, tables=tables
        )
        report.attempts = attempt
        report.n_plus, report.e_plus = counts.n_plus, counts.e_plus
        report.n_minus, report.e_minus = counts.n_minus, counts.e_minus
        if check_acceptance(counts, P, n_prime, n_doubleprime, n_delta):
            break
    else:
        report.path = "fallback"
        return fallback_graph(N, report)

    edge_k, edge_j, r_plus, r_minus = correct_cardinalities(edge_k, edge_j, counts)
    node_in, node_out = complete_degrees(node_in, node_out, counts, r_plus, r_minus, N, n_prime)
    sources, targets = match_halfedges(node_in, node_out, edge_k, edge_j, rng)
    report.accepted = True
    report.path = "accepted"
    report.r_plus, report.r_minus = r_plus, r_minus
    report.added_edges = r_plus + r_minus
    report.added_nodes = int(np.count_nonzero((node_in[n_prime:] > 0) | (node_out[n_prime:] > 0)))
    return MultiDigraph(
        in_degree=node_in,
        out_degree=node_out,
        sources=sources,
        targets=targets,
        report=report,
        edge_types=(edge_k, edge_j),
    )
