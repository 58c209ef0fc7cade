"""Smeared/switched causality quantities.

The smeared commutator integrates the field commutator against both
detectors' spatial profiles; the signalling estimator then integrates
that against both switching functions and takes a modulus at the very
end (intermediates stay complex so no cancellation order is hidden):

    E = | intg dt intg dt' chi_A(t) chi_B(t') Csm(t, x_A, t', x_B) |

Hard top-hat profiles keep the smearing/switching effects cleanly
separated from the zero-mode physics; Delta x Delta switching
short-circuits to |Csm| at the two switching instants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .commutator import full_commutator, osc_commutator_closed_1d_grid
from .errors import ComputeError, OverlappingSupportsError
from .geometry import (
    AxisKind,
    AxisSpec,
    BoundaryConfig,
    CommutatorOptions,
    DetectorSpec,
    SpacetimeEvent,
    validate_config,
)
from .quadrature import gl_nodes
from .spectrum import ModeArrays

DEFAULT_ORDER = 64


@dataclass(frozen=True)
class Profile:
    """Compactly supported switching/smearing profile on one axis."""

    kind: str            # "tophat" | "delta"
    lo: float
    hi: float
    height: float = 1.0

    @classmethod
    def tophat(cls, lo: float, hi: float, height: Optional[float] = None) -> "Profile":
        if not hi > lo:
            raise ComputeError(f"top-hat needs hi > lo, got [{lo}, {hi}]")
        return cls("tophat", lo, hi, 1.0 / (hi - lo) if height is None else height)

    @classmethod
    def delta(cls, at: float) -> "Profile":
        return cls("delta", at, at, 1.0)

    def integral(self) -> float:
        if self.kind == "delta":
            return 1.0
        return (self.hi - self.lo) * self.height

    def nodes(self, order: int):
        """Quadrature nodes and profile-weighted weights over the support."""
        if self.kind == "delta":
            return np.array([self.lo]), np.array([1.0])
        x, w = gl_nodes(self.lo, self.hi, order)
        return x, w * self.height


def switching_profile(det: DetectorSpec, height: Optional[float] = None) -> Profile:
    if det.is_delta_switched():
        return Profile.delta(det.t_on)
    return Profile.tophat(det.t_on, det.t_off, height)


def smearing_profiles(det: DetectorSpec) -> list[Profile]:
    out = []
    for c in det.center:
        if det.is_pointlike():
            out.append(Profile.delta(c))
        else:
            out.append(Profile.tophat(c - det.sigma / 2.0, c + det.sigma / 2.0, 1.0 / det.sigma))
    return out


def check_nonoverlap(A: DetectorSpec, B: DetectorSpec,
                     bc: Optional[BoundaryConfig] = None) -> bool:
    """A's switching ends strictly before B's begins, and the spatial
    supports are disjoint on every axis (wrap-around distance on
    periodic axes)."""
    if not A.t_off < B.t_on:
        return False
    for ax_i in range(len(A.center)):
        d = abs(A.center[ax_i] - B.center[ax_i])
        if bc is not None and ax_i < bc.n and bc.axes[ax_i].kind is AxisKind.PERIODIC:
            L = bc.axes[ax_i].length
            d = d % L
            d = min(d, L - d)
        if not d > (A.sigma + B.sigma) / 2.0:
            return False
    return True


# ---------------------------------------------------------------------------
# commutator over coordinate grids


def _commutator_grid(bc: BoundaryConfig, opts: CommutatorOptions,
                     t, x, tp, xp, arrays: Optional[ModeArrays] = None):
    """Commutator on broadcastable coordinate arrays.

    x and xp carry the spatial axis in their last dimension.  The 1D
    periodic/Neumann case vectorizes through the closed form; everything
    else walks the broadcast shape with the mode-sum evaluator.
    """
    t = np.asarray(t, dtype=np.float64)
    tp = np.asarray(tp, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    xp = np.asarray(xp, dtype=np.float64)
    eps = opts.resolved_epsilon(bc)
    if bc.n == 1 and bc.axes[0].kind in (AxisKind.PERIODIC, AxisKind.NEUMANN) \
            and not bc.has_open_axis():
        osc = osc_commutator_closed_1d_grid(
            bc.axes[0].kind, bc.axes[0].length, t, x[..., 0], tp, xp[..., 0], eps)
    else:
        shape = np.broadcast_shapes(t.shape, tp.shape, x.shape[:-1], xp.shape[:-1])
        tb = np.broadcast_to(t, shape)
        tpb = np.broadcast_to(tp, shape)
        xb = np.broadcast_to(x, shape + (bc.n,))
        xpb = np.broadcast_to(xp, shape + (bc.n,))
        osc = np.empty(shape, dtype=np.complex128)
        it = np.ndindex(shape)
        for idx in it:
            res = full_commutator(
                bc, SpacetimeEvent(tb[idx], tuple(xb[idx])),
                SpacetimeEvent(tpb[idx], tuple(xpb[idx])),
                opts.with_(include_zero_mode=False), arrays=arrays)
            osc[idx] = res.osc
    if opts.include_zero_mode and bc.has_zero_mode():
        return osc + (-1j / bc.volume()) * (t - tp)
    return osc


def _spatial_grid(profiles: list[Profile], order: int):
    """Tensor-product nodes over the per-axis supports: (N, n) nodes, (N,) weights."""
    axes_nodes = []
    axes_weights = []
    for p in profiles:
        xn, wn = p.nodes(order)
        axes_nodes.append(xn)
        axes_weights.append(wn)
    grids = np.meshgrid(*axes_nodes, indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=-1)
    w = axes_weights[0]
    for wn in axes_weights[1:]:
        w = np.multiply.outer(w, wn).ravel()
    return pts, w


def _smeared_complex(bc, A, B, t, tp, opts, order, arrays=None):
    """Complex smeared commutator at one (t, t') pair."""
    if A.is_pointlike() and B.is_pointlike():
        c = _commutator_grid(bc, opts, t, np.array(A.center), tp, np.array(B.center),
                             arrays=arrays)
        return complex(np.asarray(c).item())
    xa, wa = _spatial_grid(smearing_profiles(A), order)
    xb, wb = _spatial_grid(smearing_profiles(B), order)
    c = _commutator_grid(bc, opts, t, xa[:, None, :], tp, xb[None, :, :], arrays=arrays)
    return complex(wa @ c @ wb)


def smeared_commutator(bc: BoundaryConfig, A: DetectorSpec, B: DetectorSpec,
                       t: float, t_prime: float, opts: Optional[CommutatorOptions] = None,
                       *, order: int = DEFAULT_ORDER) -> complex:
    """Csm(t, x_A, t', x_B): commutator integrated against both smearing
    profiles (pointlike detectors collapse to the bare commutator)."""
    opts = opts if opts is not None else CommutatorOptions()
    validate_config(bc, opts)
    return _smeared_complex(bc, A, B, float(t), float(t_prime), opts, order)


def estimator_complex(bc: BoundaryConfig, A: DetectorSpec, B: DetectorSpec,
                      opts: Optional[CommutatorOptions] = None, *,
                      order: int = DEFAULT_ORDER,
                      chi_height_a: Optional[float] = None,
                      chi_height_b: Optional[float] = None):
    """Switching-weighted double time integral of Csm, before the modulus.

    Returns (complex value, error estimate) where the estimate comes
    from one node doubling of every quadrature direction.
    """
    opts = opts if opts is not None else CommutatorOptions()
    validate_config(bc, opts)
    if A.n != bc.n or B.n != bc.n:
        raise ComputeError("detector dimension does not match the configuration")
    if not check_nonoverlap(A, B, bc):
        raise OverlappingSupportsError(
            "detector switching/smearing supports overlap; the estimator requires "
            "t_off_A < t_on_B and spatially disjoint supports")

    chi_a = switching_profile(A, chi_height_a)
    chi_b = switching_profile(B, chi_height_b)

    def evaluate(o: int) -> complex:
        ta, wa = chi_a.nodes(o)
        tb, wb = chi_b.nodes(o)
        if A.is_pointlike() and B.is_pointlike():
            c = _commutator_grid(bc, opts, ta[:, None], np.array(A.center),
                                 tb[None, :], np.array(B.center))
            return complex(wa @ c @ wb)
        # chunk over A's time nodes to bound the 2(n+1)-dim tensor
        xa, wxa = _spatial_grid(smearing_profiles(A), o)
        xb, wxb = _spatial_grid(smearing_profiles(B), o)
        total = 0.0 + 0.0j
        for i in range(ta.size):
            c = _commutator_grid(
                bc, opts, ta[i], xa[None, :, None, :], tb[:, None, None], xb[None, None, :, :])
            total += wa[i] * complex(wb @ ((c @ wxb) @ wxa))
        return total

    if chi_a.kind == "delta" and chi_b.kind == "delta" \
            and A.is_pointlike() and B.is_pointlike():
        return evaluate(1), 0.0
    coarse = evaluate(order)
    fine = evaluate(2 * order)
    return fine, abs(fine - coarse)


def estimator_E(bc: BoundaryConfig, A: DetectorSpec, B: DetectorSpec,
                opts: Optional[CommutatorOptions] = None, *,
                order: int = DEFAULT_ORDER) -> float:
    """The causality estimator: modulus of the switching-weighted double
    time integral of the smeared commutator."""
    value, _ = estimator_complex(bc, A, B, opts, order=order)
    return abs(value)


# ---------------------------------------------------------------------------
# length scans


@dataclass(frozen=True)
class LScanResult:
    lengths: tuple[float, ...]
    dt_grid: tuple[float, ...]
    curves: dict                      # L -> ndarray of E over dt_grid
    e_spacelike: np.ndarray
    e_timelike: np.ndarray
    spacelike_point: tuple[float, float]   # (dx, dt)
    timelike_point: tuple[float, float]
    fit_exponent: float


def _delta_pointlike_pair(dx: float, dt: float):
    a = DetectorSpec(center=(0.0,), sigma=0.0, t_on=0.0, t_off=0.0)
    b = DetectorSpec(center=(dx,), sigma=0.0, t_on=dt, t_off=dt)
    return a, b


def estimator_vs_L(lengths, dx: float, dt_grid, opts: Optional[CommutatorOptions] = None,
                   *, spacelike_dt: float = 2.0,
                   timelike_dx: Optional[float] = None,
                   timelike_dt: float = 7.0) -> LScanResult:
    """Oscillator-only estimator scans over the box length (1D periodic).

    Emits E(dt) curves per length plus E(L) at one fixed spacelike and
    one fixed timelike separation, and fits the spacelike power law.
    """
    opts = opts if opts is not None else CommutatorOptions()
    if opts.include_zero_mode:
        raise ComputeError("length scans quantify the oscillator-only estimator; "
                           "set include_zero_mode=False")
    lengths = tuple(float(L) for L in lengths)
    dt_grid = tuple(float(v) for v in dt_grid)
    tdx = dx if timelike_dx is None else timelike_dx

    curves = {}
    e_space = np.empty(len(lengths))
    e_time = np.empty(len(lengths))
    for i, L in enumerate(lengths):
        bc = BoundaryConfig((AxisSpec(AxisKind.PERIODIC, L),))
        cur = np.empty(len(dt_grid))
        for j, dt in enumerate(dt_grid):
            a, b = _delta_pointlike_pair(dx, dt)
            cur[j] = estimator_E(bc, a, b, opts)
        curves[L] = cur
        a, b = _delta_pointlike_pair(dx, spacelike_dt)
        e_space[i] = estimator_E(bc, a, b, opts)
        a, b = _delta_pointlike_pair(tdx, timelike_dt)
        e_time[i] = estimator_E(bc, a, b, opts)

    slope = float(np.polyfit(np.log(lengths), np.log(e_space), 1)[0])
    return LScanResult(lengths, dt_grid, curves, e_space, e_time,
                       (dx, spacelike_dt), (tdx, timelike_dt), slope)
