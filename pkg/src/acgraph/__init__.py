"""Directed assortative configuration graphs with prescribed node and edge types."""

from .copula import (
    CopulaSpec,
    assortativity_coefficient,
    calibrate_lambda,
    marginal_cdfs,
    q_from_copula,
    rho_bounds,
)
from .distributions import (
    EdgeTypeDistribution,
    NodeTypeDistribution,
    marginals,
    mean_degree,
    validate_consistency,
)
from .erasure import ErasureReport, erase, is_simple
from .generator import fallback_graph, generate, plan_sizes
from .graph import GenerationReport, MultiDigraph
from .metrics import EmpiricalSummary, empirical_summary
from .variant import OutOutEdgeDistribution, generate_variant, variant_summary

__all__ = [
    "CopulaSpec",
    "EdgeTypeDistribution",
    "EmpiricalSummary",
    "ErasureReport",
    "GenerationReport",
    "MultiDigraph",
    "NodeTypeDistribution",
    "OutOutEdgeDistribution",
    "assortativity_coefficient",
    "calibrate_lambda",
    "empirical_summary",
    "erase",
    "fallback_graph",
    "generate",
    "generate_variant",
    "is_simple",
    "marginal_cdfs",
    "marginals",
    "mean_degree",
    "plan_sizes",
    "q_from_copula",
    "rho_bounds",
    "validate_consistency",
    "variant_summary",
]
