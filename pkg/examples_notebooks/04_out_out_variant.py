"""
Edge types keyed by both out-degrees
====================================

In the variant construction an edge v -> w is typed by (k_v, k_w), the
out-degrees of both ends.  Targets with out-degree 0 are allowed.
"""

# %%
import numpy as np

from acgraph import NodeTypeDistribution
from acgraph.variant import (
    OutOutEdgeDistribution,
    generate_variant,
    required_variant_marginals,
    validate_variant_consistency,
    variant_summary,
)

P = NodeTypeDistribution.diagonal_example(0.5)
source, target = required_variant_marginals(P)
print("source marginal by k :", source)
print("target marginal by k':", target)

# %%
# Two laws with these marginals: the product law, and one that only joins
# nodes of equal out-degree.
product = OutOutEdgeDistribution(np.outer(source[1:], target))
q = np.zeros((4, 5))
q[1, 2], q[3, 4] = 1 / 3, 2 / 3
matched = OutOutEdgeDistribution(q)
for name, Qv in (("product", product), ("matched", matched)):
    assert validate_variant_consistency(P, Qv).ok

# %%
# Repairs add whole nodes instead of bumping degrees, so the graph can end up
# with a few nodes of types outside P.
for name, Qv in (("product", product), ("matched", matched)):
    g = generate_variant(P, Qv, 5000, seed=3, max_attempts=500)
    s = variant_summary(g, P, Qv)
    r = g.report
    print(f"{name}: attempts={r.attempts}, added nodes={r.added_nodes}, added edges={r.added_edges}, "
          f"rho_hat={s.rho_hat:.3f}, deviation={s.deviation:.3f}")
