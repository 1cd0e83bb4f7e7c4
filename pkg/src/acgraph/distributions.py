"""Node-type and edge-type distributions.

Conventions used throughout the package:

* ``P`` is stored as a dense ``(J + 1, K + 1)`` array with ``p[j, k]`` the
  probability of a node having in-degree ``j`` and out-degree ``k``.
* ``Q`` is stored as a dense ``(K, J)`` array with ``q[k - 1, j - 1]`` the
  probability of an edge leaving a node of out-degree ``k`` and entering a
  node of in-degree ``j``.
* Marginals are always returned indexed by degree, so ``p_plus[k]`` and
  ``q_plus[k]`` both refer to out-degree ``k``; entry 0 of an edge marginal
  is 0 by definition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BalanceError, DistributionError, ZeroDegreeError

SUM_TOL = 1e-12
CONSISTENCY_TOL = 1e-9


def _as_probability_matrix(values, shape: tuple[int, int], name: str) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.shape != shape:
        raise DistributionError(f"{name} must have shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DistributionError(f"{name} contains non-finite entries")
    if np.any(arr < 0):
        raise DistributionError(f"{name} has negative entries")
    total = arr.sum()
    if abs(total - 1.0) > SUM_TOL:
        raise DistributionError(f"{name} sums to {total!r}, not 1")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class NodeTypeDistribution:
    """Joint law ``p[j, k]`` of (in-degree, out-degree) of a node."""

    p: np.ndarray

    def __init__(self, p) -> None:
        arr = np.array(p, dtype=float)
        if arr.ndim != 2 or arr.shape[0] < 2 or arr.shape[1] < 2:
            raise DistributionError(
                f"P must be a 2-d array of shape (J+1, K+1) with J, K >= 1, got {arr.shape}"
            )
        object.__setattr__(self, "p", _as_probability_matrix(arr, arr.shape, "P"))

    @property
    def J(self) -> int:
        return self.p.shape[0] - 1

    @property
    def K(self) -> int:
        return self.p.shape[1] - 1

    @classmethod
    def from_entries(cls, J: int, K: int, entries: dict[tuple[int, int], float]):
        """Build from a sparse ``{(j, k): probability}`` mapping."""
        p = np.zeros((J + 1, K + 1))
        for (j, k), value in entries.items():
            p[j, k] = value
        return cls(p)

    @classmethod
    def diagonal_example(cls, p: float) -> NodeTypeDistribution:
        """Two-type law with ``p`` at (2, 2) and ``1 - p`` at (4, 4), J = K = 4."""
        return cls.from_entries(4, 4, {(2, 2): p, (4, 4): 1.0 - p})

    def marginals(self) -> tuple[np.ndarray, np.ndarray]:
        return marginals(self)

    @property
    def z(self) -> float:
        return mean_degree(self)

    def __repr__(self) -> str:
        return f"NodeTypeDistribution(J={self.J}, K={self.K})"


@dataclass(frozen=True, eq=False)
class EdgeTypeDistribution:
    """Joint law ``q[k - 1, j - 1]`` of (source out-degree, target in-degree)."""

    q: np.ndarray

    def __init__(self, q) -> None:
        arr = np.array(q, dtype=float)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise DistributionError(f"Q must be a 2-d array of shape (K, J), got {arr.shape}")
        object.__setattr__(self, "q", _as_probability_matrix(arr, arr.shape, "Q"))

    @property
    def K(self) -> int:
        return self.q.shape[0]

    @property
    def J(self) -> int:
        return self.q.shape[1]

    @classmethod
    def from_entries(cls, K: int, J: int, entries: dict[tuple[int, int], float]):
        """Build from a sparse ``{(k, j): probability}`` mapping (1-based degrees)."""
        q = np.zeros((K, J))
        for (k, j), value in entries.items():
            q[k - 1, j - 1] = value
        return cls(q)

    def at(self, k: int, j: int) -> float:
        return float(self.q[k - 1, j - 1])

    @property
    def q_plus(self) -> np.ndarray:
        """Out-degree marginal indexed by ``k`` (length ``K + 1``)."""
        return np.concatenate(([0.0], self.q.sum(axis=1)))

    @property
    def q_minus(self) -> np.ndarray:
        """In-degree marginal indexed by ``j`` (length ``J + 1``)."""
        return np.concatenate(([0.0], self.q.sum(axis=0)))

    def __repr__(self) -> str:
        return f"EdgeTypeDistribution(K={self.K}, J={self.J})"


@dataclass
class ValidationReport:
    """Marginal mismatches between an edge-type law and its node-type law.

    Each violation is a ``(degree, expected, actual)`` triple.
    """

    tol: float
    out_violations: list[tuple[int, float, float]] = field(default_factory=list)
    in_violations: list[tuple[int, float, float]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.out_violations and not self.in_violations

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "consistent"
        parts = [f"out-degree {k}: expected {e:.6g}, got {a:.6g}" for k, e, a in self.out_violations]
        parts += [f"in-degree {j}: expected {e:.6g}, got {a:.6g}" for j, e, a in self.in_violations]
        return "; ".join(parts)


def marginals(P: NodeTypeDistribution) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(p_minus, p_plus)``: in-degree and out-degree marginals of P."""
    return P.p.sum(axis=1), P.p.sum(axis=0)


def mean_degree(P: NodeTypeDistribution) -> float:
    """Mean degree ``z`` of P.

    Raises:
        BalanceError: mean out-degree and mean in-degree differ by more than 1e-12.
        ZeroDegreeError: ``z <= 0``.
    """
    p_minus, p_plus = marginals(P)
    z_out = float(np.dot(np.arange(P.K + 1), p_plus))
    z_in = float(np.dot(np.arange(P.J + 1), p_minus))
    if abs(z_out - z_in) > SUM_TOL:
        raise BalanceError(f"mean out-degree {z_out!r} != mean in-degree {z_in!r}")
    if z_out <= 0:
        raise ZeroDegreeError("mean degree is zero")
    return z_out


def required_edge_marginals(P: NodeTypeDistribution) -> tuple[np.ndarray, np.ndarray]:
    """Edge marginals forced by P: ``(k * p_plus[k] / z, j * p_minus[j] / z)``.

    Both arrays are indexed by degree; entry 0 is 0.
    """
    z = mean_degree(P)
    p_minus, p_plus = marginals(P)
    return np.arange(P.K + 1) * p_plus / z, np.arange(P.J + 1) * p_minus / z


def validate_consistency(
    P: NodeTypeDistribution, Q: EdgeTypeDistribution, tol: float = CONSISTENCY_TOL
) -> ValidationReport:
    """Check that the marginals of Q are the degree-weighted marginals of P."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    want_plus, want_minus = required_edge_marginals(P)
    if Q.K != P.K or Q.J != P.J:
        raise DistributionError(
            f"Q has shape (K={Q.K}, J={Q.J}) but P has K={P.K}, J={P.J}"
        )
    report = ValidationReport(tol=tol)
    got_plus, got_minus = Q.q_plus, Q.q_minus
    for k in range(1, P.K + 1):
        if abs(got_plus[k] - want_plus[k]) > tol:
            report.out_violations.append((k, float(want_plus[k]), float(got_plus[k])))
    for j in range(1, P.J + 1):
        if abs(got_minus[j] - want_minus[j]) > tol:
            report.in_violations.append((j, float(want_minus[j]), float(got_minus[j])))
    return report
