"""Erased configuration graphs: drop self-loops, collapse parallel edges."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import MultiDigraph


@dataclass(frozen=True)
class ErasureReport:
    self_loops_removed: int
    excess_parallel_removed: int
    edges_before: int
    edges_after: int
    multi_pairs: int  # ordered pairs that carried two or more non-loop edges


def _pair_keys(g: MultiDigraph) -> np.ndarray:
    return g.sources.astype(np.int64) * max(g.n, 1) + g.targets.astype(np.int64)


def first_copies(keys: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Position of the first occurrence of each distinct key, and its multiplicity.

    Keys lie in ``[0, n**2)``; results are ordered by key.
    """
    m = keys.size
    if m and max(n, 1) ** 2 * m < 2**62:
        # pack (key, position) into one integer: a plain sort groups the copies
        # of a key with the earliest first, much faster than a stable argsort
        packed = np.sort(keys * m + np.arange(m))
        pair = packed // m
        starts = np.flatnonzero(np.concatenate(([True], pair[1:] != pair[:-1])))
        return packed[starts] % m, np.diff(np.append(starts, m))
    _, first, multiplicity = np.unique(keys, return_index=True, return_counts=True)
    return first, multiplicity


def erase(g: MultiDigraph) -> tuple[MultiDigraph, ErasureReport]:
    """Remove every self-loop and keep one copy of each ordered pair.

    The surviving copy is the earliest one in edge order.  Node types of the
    result are the degrees realised by the surviving edges.
    """
    loops = g.sources == g.targets
    keep_candidates = np.flatnonzero(~loops)
    first, multiplicity = first_copies(_pair_keys(g)[keep_candidates], g.n)
    is_first = np.zeros(keep_candidates.size, dtype=bool)
    is_first[first] = True
    kept = keep_candidates[is_first]

    sources, targets = g.sources[kept], g.targets[kept]
    simple = MultiDigraph(
        in_degree=np.bincount(targets, minlength=g.n),
        out_degree=np.bincount(sources, minlength=g.n),
        sources=sources,
        targets=targets,
    )
    report = ErasureReport(
        self_loops_removed=int(loops.sum()),
        excess_parallel_removed=int(keep_candidates.size - kept.size),
        edges_before=g.num_edges,
        edges_after=int(kept.size),
        multi_pairs=int(np.count_nonzero(multiplicity > 1)),
    )
    return simple, report


def is_simple(g: MultiDigraph) -> bool:
    if np.any(g.sources == g.targets):
        return False
    return np.unique(_pair_keys(g)).size == g.num_edges
