"""
Generating a graph and erasing it
=================================

Sample one directed multigraph with prescribed node and edge types, look at
what the construction had to repair, then erase self-loops and parallel edges.
"""

# %%
import numpy as np

from acgraph import NodeTypeDistribution, erase, generate
from acgraph.copula import calibrate_lambda
from acgraph.generator import plan_sizes
from acgraph.metrics import empirical_summary

P = NodeTypeDistribution.diagonal_example(0.5)
_, Q = calibrate_lambda(P, 0.8)

# %%
# Size plan: N' nodes draw their type from P, the rest are held back to
# absorb the rounding mismatches between node and edge tallies.
N = 1000
n_prime, n_doubleprime = plan_sizes(N, 0.5001, P.J, P.K)
print(f"N' = {n_prime}, N'' = {n_doubleprime}, reserve = {N - n_prime}")

# %%
# A single attempt is accepted only if every tally lands close to its mean.
# With the default window that happens roughly one time in ten, so either
# accept the fallback graph or allow retries.
single = [generate(P, Q, N, seed=s).report.accepted for s in range(50)]
print("accepted single attempts:", sum(single), "of 50")

g = generate(P, Q, N, seed=7, max_attempts=500)
r = g.report
print(f"attempts={r.attempts}, edges={g.num_edges} = {r.edge_sample_count} + {r.r_plus} + {r.r_minus}")

# %%
# Every node gets exactly its prescribed degrees, and every edge joins a
# node of out-degree k to one of in-degree j as its sampled type says.
assert np.array_equal(g.realized_out_degree(), g.out_degree)
assert np.array_equal(g.realized_in_degree(), g.in_degree)
k_e, j_e = g.edge_types
assert np.array_equal(k_e, g.out_degree[g.sources])

# %%
# Erasing keeps the first copy of each ordered pair and drops self-loops.
h, rep = erase(g)
print(rep)

for name, graph in (("multigraph", g), ("erased", h)):
    s = empirical_summary(graph, P, Q)
    print(f"{name:>10}: rho_hat = {s.rho_hat:.4f}, deviation = {s.deviation:.4f}")
    print("  node types:", [(j, k, round(v, 3)) for j, k, v in s.p_entries()])
