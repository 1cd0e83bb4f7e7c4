"""Alias-method sampling for finite categorical distributions."""

from __future__ import annotations

import numpy as np


class AliasTable:
    """Walker/Vose alias table: O(m) build, O(1) per draw.

    Only outcomes with strictly positive probability enter the table, so a
    zero-probability outcome can never be drawn, even under rounding.

    Args:
        probs: non-negative weights over outcomes ``0 .. m - 1``; normalised
            internally.
    """

    def __init__(self, probs):
        probs = np.asarray(probs, dtype=float).ravel()
        support = np.flatnonzero(probs > 0)
        if support.size == 0:
            raise ValueError("alias table needs at least one positive weight")
        weights = probs[support] / probs[support].sum()
        n = support.size
        scaled = weights * n
        prob = np.ones(n)
        alias = np.arange(n)
        small = [i for i in range(n) if scaled[i] < 1.0]
        large = [i for i in range(n) if scaled[i] >= 1.0]
        while small and large:
            s = small.pop()
            l = large.pop()
            prob[s] = scaled[s]
            alias[s] = l
            scaled[l] = (scaled[l] + scaled[s]) - 1.0
            (small if scaled[l] < 1.0 else large).append(l)
        # leftovers are 1 up to rounding
        for i in small + large:
            prob[i] = 1.0
        self.outcomes = support
        self.prob = prob
        self.alias = alias

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Draw ``size`` outcome indices."""
        n = self.prob.size
        column = rng.integers(0, n, size=size)
        coin = rng.random(size)
        picked = np.where(coin < self.prob[column], column, self.alias[column])
        return self.outcomes[picked]
