"""Deterministic reductions for oscillatory term arrays.

The pairwise tree is a function of the array length alone: repeated
adjacent-pair combination, a trailing odd element carried unchanged
between rounds.  Because the tree never depends on how work was
scheduled, fan-out over modes or grid points cannot change the result.
The numba kernels implement the identical tree.
"""

from __future__ import annotations

import math

import numpy as np


def pairwise_sum(terms: np.ndarray) -> float:
    """Fixed-tree pairwise reduction (canonical-order contract)."""
    a = np.asarray(terms, dtype=np.float64)
    if a.size == 0:
        return 0.0
    while a.size > 1:
        m = a.size
        nxt = a[0 : m - 1 : 2] + a[1:m:2]
        if m % 2:
            nxt = np.concatenate([nxt, a[-1:]])
        a = nxt
    return float(a[0])


def compensated_sum(terms: np.ndarray) -> float:
    """Serial compensated sum (exact up to one final rounding)."""
    # math.fsum tracks all partials exactly; the numba backend uses a
    # Neumaier loop instead, which agrees to the last few ulps
    return math.fsum(np.asarray(terms, dtype=np.float64))


def reduce_terms(terms: np.ndarray, policy: str) -> float:
    if policy == "pairwise":
        return pairwise_sum(terms)
    if policy == "compensated":
        return compensated_sum(terms)
    raise ValueError(f"unknown summation policy {policy!r}")
