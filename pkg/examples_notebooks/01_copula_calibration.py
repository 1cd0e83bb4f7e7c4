"""
Edge-type laws from copulas
===========================

Build the edge-type matrix for a two-type node law and tune its
assortativity with a mixture of the lower and upper Frechet bounds.
"""

# %%
# A node law with half the nodes of type (2, 2) and half of type (4, 4).
import numpy as np

from acgraph import CopulaSpec, NodeTypeDistribution, q_from_copula
from acgraph.copula import assortativity_coefficient, calibrate_lambda, rho_bounds
from acgraph.distributions import marginals, mean_degree, required_edge_marginals

P = NodeTypeDistribution.diagonal_example(0.5)
p_minus, p_plus = marginals(P)
print("mean degree z =", mean_degree(P))
print("in-degree marginal ", p_minus)
print("out-degree marginal", p_plus)

# %%
# Edges must pick their source out-degree k with probability k p_k / z, and
# likewise for the target in-degree.  These are the marginals every valid
# edge-type matrix has to reproduce.
q_plus, q_minus = required_edge_marginals(P)
print("required q+ =", q_plus)
print("required q- =", q_minus)

# %%
# Three copulas, three matrices.  Rows are the source out-degree k = 1..4,
# columns the target in-degree j = 1..4.
np.set_printoptions(precision=4, suppress=True)
for spec in (CopulaSpec.lower(), CopulaSpec.independence(), CopulaSpec.upper()):
    Q = q_from_copula(P, spec)
    print(f"{spec.kind.value:>8}: rho = {assortativity_coefficient(Q):+.4f}")
    print(Q.q)

# %%
# The attainable range of the assortativity coefficient.  For this law the
# lower bound is -1/2; it would reach -1 only for p = 2/3.
print("rho bounds:", rho_bounds(P))
print("p = 2/3   :", rho_bounds(NodeTypeDistribution.diagonal_example(2 / 3)))

# %%
# The coefficient is affine in the mixture weight, so hitting a target is a
# one-line solve.
for target in (-0.5, 0.0, 0.4, 0.8, 1.0):
    lam, Q = calibrate_lambda(P, target)
    print(f"target {target:+.1f}: lambda = {lam:.6f}, achieved {assortativity_coefficient(Q):+.12f}")
