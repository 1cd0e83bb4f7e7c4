"""Edge-type distributions built from bivariate copulas.

Given P, the marginals of any consistent Q are fixed; the dependence between
source out-degree and target in-degree is then chosen through a copula ``C``
evaluated on the grid of marginal CDFs.  Only the Fréchet-Hoeffding bounds
``W`` and ``M``, the independence copula and mixtures ``lam * W + (1 - lam) * M``
are supported.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .distributions import (
    EdgeTypeDistribution,
    NodeTypeDistribution,
    marginals,
    mean_degree,
)
from .errors import DegenerateMarginalError, DistributionError, OutOfRangeError

CLAMP_TOL = 1e-12
CALIBRATION_TOL = 1e-9


class CopulaKind(str, Enum):
    LOWER = "W"
    UPPER = "M"
    INDEPENDENCE = "Pi"
    MIXTURE = "mixture"


@dataclass(frozen=True)
class CopulaSpec:
    kind: CopulaKind
    lam: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", CopulaKind(self.kind))
        if self.kind is CopulaKind.MIXTURE and not 0.0 <= self.lam <= 1.0:
            raise ValueError(f"mixture weight must lie in [0, 1], got {self.lam}")

    @classmethod
    def lower(cls) -> CopulaSpec:
        return cls(CopulaKind.LOWER)

    @classmethod
    def upper(cls) -> CopulaSpec:
        return cls(CopulaKind.UPPER)

    @classmethod
    def independence(cls) -> CopulaSpec:
        return cls(CopulaKind.INDEPENDENCE)

    @classmethod
    def mixture(cls, lam: float) -> CopulaSpec:
        return cls(CopulaKind.MIXTURE, float(lam))

    def __call__(self, u1, u2):
        return evaluate(self, u1, u2)


def evaluate(C: CopulaSpec, u1, u2):
    """Evaluate copula ``C`` at ``(u1, u2)``; broadcasts over arrays."""
    u1 = np.asarray(u1, dtype=float)
    u2 = np.asarray(u2, dtype=float)
    if C.kind is CopulaKind.LOWER:
        out = np.maximum(u1 + u2 - 1.0, 0.0)
    elif C.kind is CopulaKind.UPPER:
        out = np.minimum(u1, u2)
    elif C.kind is CopulaKind.INDEPENDENCE:
        out = u1 * u2
    else:
        w = np.maximum(u1 + u2 - 1.0, 0.0)
        m = np.minimum(u1, u2)
        out = C.lam * w + (1.0 - C.lam) * m
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True, eq=False)
class MarginalCdfs:
    """CDFs of the edge marginals; ``q_plus_cdf[k]`` for k in 0..K."""

    q_plus_cdf: np.ndarray
    q_minus_cdf: np.ndarray


def marginal_cdfs(P: NodeTypeDistribution) -> MarginalCdfs:
    z = mean_degree(P)
    p_minus, p_plus = marginals(P)
    plus = np.cumsum(np.arange(P.K + 1) * p_plus) / z
    minus = np.cumsum(np.arange(P.J + 1) * p_minus) / z
    return MarginalCdfs(plus, minus)


def q_from_copula(P: NodeTypeDistribution, C: CopulaSpec) -> EdgeTypeDistribution:
    """Edge-type law whose joint CDF is ``C`` applied to the marginal CDFs.

    ``q[k, j]`` is the rectangle mass of ``C`` over
    ``(Q+(k-1), Q+(k)] x (Q-(j-1), Q-(j)]``.  Rounding noise below 1e-12 is
    clamped to zero; the matrix is not renormalised.
    """
    cdfs = marginal_cdfs(P)
    grid = evaluate(C, cdfs.q_plus_cdf[:, None], cdfs.q_minus_cdf[None, :])
    q = grid[1:, 1:] + grid[:-1, :-1] - grid[1:, :-1] - grid[:-1, 1:]
    if q.min() < -CLAMP_TOL:
        raise DistributionError(f"copula produced negative mass {q.min()!r}")
    q[q < 0] = 0.0
    return EdgeTypeDistribution(q)


def _marginal_moments(Q: EdgeTypeDistribution):
    ks = np.arange(1, Q.K + 1, dtype=float)
    js = np.arange(1, Q.J + 1, dtype=float)
    q_plus = Q.q.sum(axis=1)
    q_minus = Q.q.sum(axis=0)
    var_plus = float(np.dot(ks**2, q_plus) - np.dot(ks, q_plus) ** 2)
    var_minus = float(np.dot(js**2, q_minus) - np.dot(js, q_minus) ** 2)
    if var_plus <= CLAMP_TOL or var_minus <= CLAMP_TOL:
        raise DegenerateMarginalError(
            f"edge marginal variance is zero (out: {var_plus:.3g}, in: {var_minus:.3g})"
        )
    return ks, js, q_plus, q_minus, np.sqrt(var_plus) * np.sqrt(var_minus)


def assortativity_coefficient(Q: EdgeTypeDistribution) -> float:
    """Pearson correlation between source out-degree and target in-degree under Q."""
    ks, js, q_plus, q_minus, scale = _marginal_moments(Q)
    cov = float(np.sum(np.outer(ks, js) * (Q.q - np.outer(q_plus, q_minus))))
    return float(cov / scale)


def assortativity_hoeffding(Q: EdgeTypeDistribution) -> float:
    """Same coefficient as :func:`assortativity_coefficient`, via Hoeffding's identity.

    Sums ``F(k, j) - F+(k) F-(j)`` over the integer grid, where ``F`` is the
    joint CDF of Q.  Kept as an independent cross-check of the Pearson form.
    """
    _, _, q_plus, q_minus, scale = _marginal_moments(Q)
    joint = np.cumsum(np.cumsum(Q.q, axis=0), axis=1)
    cov = float(np.sum(joint - np.outer(np.cumsum(q_plus), np.cumsum(q_minus))))
    return float(cov / scale)


def rho_bounds(P: NodeTypeDistribution) -> tuple[float, float]:
    """Smallest and largest assortativity attainable for edges consistent with P."""
    _marginal_moments(q_from_copula(P, CopulaSpec.independence()))
    rho_min = assortativity_coefficient(q_from_copula(P, CopulaSpec.lower()))
    rho_max = assortativity_coefficient(q_from_copula(P, CopulaSpec.upper()))
    return float(rho_min), float(rho_max)


def calibrate_lambda(
    P: NodeTypeDistribution, rho_target: float
) -> tuple[float, EdgeTypeDistribution]:
    """Mixture weight ``lam`` such that ``lam * W + (1 - lam) * M`` hits ``rho_target``.

    The coefficient is affine in the copula, so the weight is solved in closed
    form from the two bounds.

    Raises:
        OutOfRangeError: ``rho_target`` lies outside :func:`rho_bounds`.
    """
    rho_min, rho_max = rho_bounds(P)
    if not rho_min - CLAMP_TOL <= rho_target <= rho_max + CLAMP_TOL:
        raise OutOfRangeError(
            f"target assortativity {rho_target} outside attainable range "
            f"[{rho_min:.6g}, {rho_max:.6g}]"
        )
    lam = (rho_max - rho_target) / (rho_max - rho_min)
    lam = min(max(lam, 0.0), 1.0)
    Q = q_from_copula(P, CopulaSpec.mixture(lam))
    achieved = assortativity_coefficient(Q)
    if abs(achieved - rho_target) > CALIBRATION_TOL:
        raise DistributionError(
            f"calibrated mixture reaches {achieved!r}, target {rho_target!r}"
        )
    return float(lam), Q
