"""Gauss-Legendre quadrature helpers.

Node/weight sets are cached per order.  ``panel_nodes`` lays a fixed
panel grid over an interval; oscillatory integrands pick the panel count
from their phase budget so each panel sees only a few radians.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def _leggauss(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def gl_nodes(a: float, b: float, order: int):
    """Nodes and weights on [a, b]."""
    x, w = _leggauss(order)
    half = 0.5 * (b - a)
    return 0.5 * (a + b) + half * x, half * w


def panel_nodes(a: float, b: float, n_panels: int, order: int):
    """Composite rule: ``n_panels`` equal panels, ``order`` nodes each."""
    edges = np.linspace(a, b, n_panels + 1)
    x, w = _leggauss(order)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def split_panel_nodes(breakpoints, order: int):
    """One panel per consecutive breakpoint pair (aligns kinks to edges)."""
    bp = np.asarray(breakpoints, dtype=np.float64)
    x, w = _leggauss(order)
    mid = 0.5 * (bp[:-1] + bp[1:])
    half = 0.5 * (bp[1:] - bp[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights
