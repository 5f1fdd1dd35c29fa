"""Brute-force re-implementations of the rank-threshold rules.

Deliberately naive (O(n^2), no shared code with the kernel) so the test
suite can cross-check the fast implementations against an independent
reading of the definitions.
"""

from __future__ import annotations

from typing import Sequence


def naive_h_oracle(weights: Sequence[float]) -> int:
    """Largest r such that at least r weights are >= r."""
    n = len(weights)
    for r in range(n, 0, -1):
        if sum(1 for w in weights if w >= r) >= r:
            return r
    return 0


def naive_g_oracle(weights: Sequence[float]) -> int:
    """Largest r <= n such that the r largest weights sum to at least r**2."""
    ordered = sorted(weights, reverse=True)
    n = len(ordered)
    for r in range(n, 0, -1):
        if sum(ordered[:r]) >= r * r:
            return r
    return 0
