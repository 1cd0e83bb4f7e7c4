"""Directed multigraph container and generation bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(eq=False)
class GenerationReport:
    """What happened during one call to a generator.

    Tallies are arrays indexed by degree.  For the main construction
    ``n_plus``/``e_plus`` are over out-degree ``k`` and ``n_minus``/``e_minus``
    over in-degree ``j``; the out-out variant stores its target-side tallies
    (indexed by the target's out-degree) in ``n_minus``/``e_minus``.
    Tallies are ``None`` when no attempt got past sampling.
    """

    accepted: bool
    n: int
    n_prime: int
    n_doubleprime: int
    delta: float
    edge_sample_count: int
    n_plus: np.ndarray | None = None
    e_plus: np.ndarray | None = None
    n_minus: np.ndarray | None = None
    e_minus: np.ndarray | None = None
    r_plus: int = 0
    r_minus: int = 0
    seed: int | None = None
    attempts: int = 1
    path: str = "accepted"
    added_nodes: int = 0
    added_edges: int = 0


@dataclass(eq=False)
class MultiDigraph:
    """Typed directed multigraph on nodes ``0 .. n - 1``.

    ``in_degree[v]`` and ``out_degree[v]`` are the node type ``(j_v, k_v)``.
    ``edge_types`` holds the sampled type of every edge in edge order (as
    ``(k_e, j_e)`` or, for the out-out variant, ``(k_e, k'_e)``); it is
    ``None`` for graphs not produced by a generator, e.g. after erasure.
    """

    in_degree: np.ndarray
    out_degree: np.ndarray
    sources: np.ndarray
    targets: np.ndarray
    report: GenerationReport | None = None
    edge_types: tuple[np.ndarray, np.ndarray] | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return int(self.in_degree.size)

    @property
    def num_edges(self) -> int:
        return int(self.sources.size)

    @property
    def node_types(self) -> np.ndarray:
        """``(n, 2)`` array of ``(j_v, k_v)`` rows."""
        return np.column_stack((self.in_degree, self.out_degree))

    @property
    def edges(self) -> np.ndarray:
        """``(E, 2)`` array of ``(source, target)`` rows."""
        return np.column_stack((self.sources, self.targets))

    def realized_out_degree(self) -> np.ndarray:
        return np.bincount(self.sources, minlength=self.n)

    def realized_in_degree(self) -> np.ndarray:
        return np.bincount(self.targets, minlength=self.n)

    @classmethod
    def from_edges(cls, n: int, edges, report: GenerationReport | None = None) -> MultiDigraph:
        """Build a graph whose node types are the degrees realised by ``edges``."""
        arr = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        sources, targets = arr[:, 0].copy(), arr[:, 1].copy()
        return cls(
            in_degree=np.bincount(targets, minlength=n),
            out_degree=np.bincount(sources, minlength=n),
            sources=sources,
            targets=targets,
            report=report,
        )
