"""Out-out edge types: an edge ``v -> w`` has type ``(k_v, k_w)``.

The target side is now keyed by the *out*-degree of the target, so a node of
type ``(j, k')`` offers ``j`` target slots in group ``k'``.  The repair step
differs from the main construction: count mismatches are fixed by adding
whole nodes (and a few edges into sink nodes of out-degree 0) rather than by
adjusting degrees one side at a time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import (
    CONSISTENCY_TOL,
    NodeTypeDistribution,
    ValidationReport,
    _as_probability_matrix,
    marginals,
    mean_degree,
)
from .errors import DistributionError, MatchError, TooSmallError
from .generator import (
    DEFAULT_DELTA,
    _ceil_div,
    _check_delta,
    _min_feasible,
    _within,
    ceil_safe,
    fallback_graph,
    make_rng,
)
from .graph import GenerationReport, MultiDigraph
from .metrics import EmpiricalSummary, type_frequencies
from .sampling import AliasTable


@dataclass(frozen=True, eq=False)
class OutOutEdgeDistribution:
    """Joint law ``q[k - 1, k']`` of (source out-degree, target out-degree).

    Shape ``(K, K + 1)``: sources have ``k >= 1``, targets ``k' >= 0``.
    """

    q: np.ndarray

    def __init__(self, q) -> None:
        arr = np.array(q, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != arr.shape[0] + 1:
            raise DistributionError(f"out-out Q must have shape (K, K+1), got {arr.shape}")
        object.__setattr__(self, "q", _as_probability_matrix(arr, arr.shape, "Q"))

    @property
    def K(self) -> int:
        return self.q.shape[0]

    @property
    def q_source(self) -> np.ndarray:
        """Source marginal indexed by ``k`` (entry 0 is 0)."""
        return np.concatenate(([0.0], self.q.sum(axis=1)))

    @property
    def q_target(self) -> np.ndarray:
        """Target marginal indexed by ``k'``."""
        return self.q.sum(axis=0)


def target_weights(P: NodeTypeDistribution) -> np.ndarray:
    """``sum_j j * p[j, k']`` for each ``k'``: in-degree mass carried by out-degree ``k'``."""
    return np.arange(P.J + 1) @ P.p


def required_variant_marginals(P: NodeTypeDistribution) -> tuple[np.ndarray, np.ndarray]:
    z = mean_degree(P)
    _, p_plus = marginals(P)
    return np.arange(P.K + 1) * p_plus / z, target_weights(P) / z


def validate_variant_consistency(
    P: NodeTypeDistribution, Qv: OutOutEdgeDistribution, tol: float = CONSISTENCY_TOL
) -> ValidationReport:
    """Compare the marginals of ``Qv`` with those forced by P.

    Target violations are reported in ``in_violations``, keyed by ``k'``.
    """
    want_source, want_target = required_variant_marginals(P)
    if Qv.K != P.K:
        raise DistributionError(f"Q has K={Qv.K} but P has K={P.K}")
    report = ValidationReport(tol=tol)
    got_source, got_target = Qv.q_source, Qv.q_target
    for k in range(1, P.K + 1):
        if abs(got_source[k] - want_source[k]) > tol:
            report.out_violations.append((k, float(want_source[k]), float(got_source[k])))
    for kk in range(P.K + 1):
        if abs(got_target[kk] - want_target[kk]) > tol:
            report.in_violations.append((kk, float(want_target[kk]), float(got_target[kk])))
    return report


def plan_sizes_variant(N: int, delta: float, K: int, z: float) -> tuple[int, int]:
    """Return ``(n_prime, n_doubleprime)`` with reserve ``ceil(2 (1 + z) ceil(N**delta)) + K**2``."""
    _check_delta(delta)

    def n_prime_of(m: int) -> int:
        return m - ceil_safe(2 * (1 + z) * math.ceil(m**delta)) - K * K

    n_prime = n_prime_of(N)
    if n_prime < 1:
        raise TooSmallError(
            f"N={N} too small for delta={delta}, K={K}, z={z:.6g}; "
            f"need N >= {_min_feasible(n_prime_of)}"
        )
    return n_prime, n_prime + math.ceil(N**delta)


def _deal_targets(node_in, node_out, edge_target, K, rng):
    targets = np.empty(edge_target.size, dtype=np.int64)
    for kk in range(K + 1):
        group_edges = np.flatnonzero(edge_target == kk)
        group_nodes = np.flatnonzero(node_out == kk)
        slots = np.repeat(group_nodes, node_in[group_nodes])
        if group_edges.size != slots.size:
            raise MatchError(
                f"target group {kk}: {group_edges.size} edges for {slots.size} slots"
            )
        targets[rng.permutation(group_edges)] = slots
    return targets


def _deal_sources(node_out, edge_source, K, rng):
    sources = np.empty(edge_source.size, dtype=np.int64)
    for k in range(1, K + 1):
        group_edges = np.flatnonzero(edge_source == k)
        group_nodes = np.flatnonzero(node_out == k)
        if group_edges.size != k * group_nodes.size:
            raise MatchError(
                f"out-degree {k}: {group_edges.size} edges for {group_nodes.size} nodes"
            )
        sources[rng.permutation(group_edges)] = np.repeat(group_nodes, k)
    return sources


def _repair_plan(n_l, e_l, n_r, e_r, source_edges, K, reserve):
    """Reserve nodes and extra edges that equalise node and edge counts.

    Reserve node types, in order: ``(1, 0)`` sinks for the padding edges,
    ``(0, k)`` sources, then per ``k'`` a block of ``(1, k')`` nodes followed
    by the matching ``(k', 0)`` sinks.  Returns ``None`` when the counts cannot
    be repaired within ``reserve`` nodes.
    """
    degrees = np.arange(K + 1)
    pad = degrees * e_l - source_edges
    pad[0] = 0
    need_source = e_l - n_l
    need_source[0] = 0
    need_target = e_r - n_r
    if np.any(need_source < 0) or np.any(need_target < 0):
        return None
    n_added = int(pad.sum() + need_source.sum() + need_target.sum() + need_target[1:].sum())
    if n_added > reserve:
        return None

    add_in = [np.ones(pad.sum(), dtype=np.int64), np.zeros(need_source.sum(), dtype=np.int64)]
    add_out = [np.zeros(pad.sum(), dtype=np.int64), np.repeat(degrees, need_source)]
    extra_source, extra_target = [np.repeat(degrees, pad)], [np.zeros(pad.sum(), dtype=np.int64)]
    for kk in range(K + 1):
        d = int(need_target[kk])
        add_in.append(np.ones(d, dtype=np.int64))
        add_out.append(np.full(d, kk, dtype=np.int64))
        if kk >= 1:
            add_in.append(np.full(d, kk, dtype=np.int64))
            add_out.append(np.zeros(d, dtype=np.int64))
            extra_source.append(np.full(kk * d, kk, dtype=np.int64))
            extra_target.append(np.zeros(kk * d, dtype=np.int64))
    return (
        np.concatenate(add_in),
        np.concatenate(add_out),
        np.concatenate(extra_source),
        np.concatenate(extra_target),
        int(pad.sum()),
    )


def generate_variant(
    P: NodeTypeDistribution,
    Qv: OutOutEdgeDistribution,
    N: int,
    delta: float = DEFAULT_DELTA,
    seed=None,
    max_attempts: int = 1,
) -> MultiDigraph:
    """Generate a multigraph whose out-out edge types follow ``Qv``.

    Same arguments and random stream order as :func:`acgraph.generator.generate`;
    target groups are indexed by ``k' = 0 .. K``.  Rejection falls back to the
    single-edge graph of the main construction.  An accepted sample whose
    repair would overflow the reserve is treated as rejected.
    """
    check = validate_variant_consistency(P, Qv)
    if not check.ok:
        raise DistributionError(f"P and Q are inconsistent: {check.describe()}")
    if max_attempts < 1:
        raise ValueError("max_attempts must be at least 1")
    rng, seed_value = make_rng(seed)
    K = P.K
    z = mean_degree(P)
    n_prime, n_doubleprime = plan_sizes_variant(N, delta, K, z)
    n_delta = N**delta
    m = ceil_safe(z * n_doubleprime)
    _, p_plus = marginals(P)
    p_target = target_weights(P)
    node_table, edge_table = AliasTable(P.p), AliasTable(Qv.q)

    report = GenerationReport(
        accepted=False,
        n=N,
        n_prime=n_prime,
        n_doubleprime=n_doubleprime,
        delta=delta,
        edge_sample_count=m,
        seed=seed_value,
    )
    for attempt in range(1, max_attempts + 1):
        node_in, node_out = np.divmod(node_table.sample(rng, n_prime), K + 1)
        edge_source, edge_target = np.divmod(edge_table.sample(rng, m), K + 1)
        edge_source += 1

        source_edges = np.bincount(edge_source, minlength=K + 1)
        n_l = np.bincount(node_out, minlength=K + 1)
        e_l = _ceil_div(source_edges)
        n_r = np.bincount(node_out, weights=node_in, minlength=K + 1).astype(np.int64)
        e_r = np.bincount(edge_target, minlength=K + 1)
        report.attempts = attempt
        report.n_plus, report.e_plus, report.n_minus, report.e_minus = n_l, e_l, n_r, e_r
        if not (
            _within(n_l[1:], p_plus[1:], n_prime, n_delta)
            and _within(e_l[1:], p_plus[1:], n_doubleprime, n_delta)
            and _within(n_r, p_target, n_prime, n_delta)
            and _within(e_r, p_target, n_doubleprime, n_delta)
        ):
            continue
        plan = _repair_plan(n_l, e_l, n_r, e_r, source_edges, K, N - n_prime)
        # a repair that does not fit the reserve counts as a rejection
        if plan is not None:
            break
    else:
        report.path = "fallback"
        g = fallback_graph(N, report)
        g.edge_types = (np.array([1]), np.array([0]))
        return g

    add_in, add_out, extra_source, extra_target, pad_total = plan
    filler = np.zeros(N - n_prime - add_in.size, dtype=np.int64)
    node_in = np.concatenate((node_in, add_in, filler))
    node_out = np.concatenate((node_out, add_out, filler))
    edge_source = np.concatenate((edge_source, extra_source))
    edge_target = np.concatenate((edge_target, extra_target))

    sources = _deal_sources(node_out, edge_source, K, rng)
    targets = _deal_targets(node_in, node_out, edge_target, K, rng)
    report.accepted = True
    report.path = "accepted"
    report.r_plus = pad_total
    report.added_nodes = int(add_in.size)
    report.added_edges = int(edge_source.size - m)
    return MultiDigraph(
        in_degree=node_in,
        out_degree=node_out,
        sources=sources,
        targets=targets,
        report=report,
        edge_types=(edge_source, edge_target),
    )


def variant_summary(
    g: MultiDigraph, P: NodeTypeDistribution, Qv: OutOutEdgeDistribution
) -> EmpiricalSummary:
    """Empirical summary with edge types ``(k_v, k_w)``; ``q_hat[k - 1, k']``."""
    return type_frequencies(g, P.p, Qv.q, g.out_degree[g.targets], second_offset=0)


def variant_edge_types(g: MultiDigraph) -> tuple[np.ndarray, np.ndarray]:
    return g.out_degree[g.sources], g.out_degree[g.targets]
