"""Orthonormal Klein-Gordon eigenmodes for a boundary configuration.

A mode on a box with per-axis conditions is

    u_I(t, x) = N_I exp(-i w_I t) * prod_l f_l(x_l)

with f_l = exp(i k x) on periodic axes (k = 2 pi i/L, i in Z),
cos(k x) on Neumann axes (k = pi i/L, i >= 0) and sin(k x) on
Dirichlet axes (k = pi i/L, i >= 1).  The normalization follows from
the Klein-Gordon inner product

    (u_I, u_J) = -i integral (u_I dt(u_J*) - u_J* dt(u_I)) d^n x = delta_IJ

which for I = J reduces to 2 w |N|^2 * prod_l integral |f_l|^2 = 1.  The
per-axis integrals are L (periodic, or a constant Neumann factor) and
L/2 (Neumann/Dirichlet with i >= 1); they are what ``_axis_norm_factors``
returns.  The light-cone behaviour of the summed commutator pins these
factors down independently, so they are locked by tests rather than
taken on faith.

The zero-frequency constant mode is never enumerated here; its
commutator is handled analytically in :mod:`causalmodes.commutator`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, ZeroFrequencyError
from .geometry import AxisKind, BoundaryConfig, CommutatorOptions, validate_config


@dataclass(frozen=True)
class Mode:
    """One Fock oscillator: multi-index, wave vector, frequency, norm."""

    index: tuple[int, ...]
    k: tuple[float, ...]
    omega: float
    norm: float


def _axis_index_range(kind: AxisKind, cutoff: int) -> np.ndarray:
    if kind is AxisKind.PERIODIC:
        return np.arange(-cutoff, cutoff + 1)
    if kind is AxisKind.NEUMANN:
        return np.arange(0, cutoff + 1)
    if kind is AxisKind.DIRICHLET:
        # i = 0 would be the identically-zero eigenfunction
        return np.arange(1, cutoff + 1)
    raise ValueError(f"open axes have no discrete index range ({kind})")


def _axis_wavenumber(kind: AxisKind, idx: np.ndarray, length: float) -> np.ndarray:
    if kind is AxisKind.PERIODIC:
        return 2.0 * np.pi * idx / length
    return np.pi * idx / length


def _axis_norm_factors(kind: AxisKind, idx: np.ndarray, length: float) -> np.ndarray:
    """Per-axis integral of |f_l|^2 over [0, L]."""
    if kind is AxisKind.PERIODIC:
        return np.full(idx.shape, length)
    if kind is AxisKind.NEUMANN:
        return np.where(idx == 0, length, length / 2.0)
    return np.full(idx.shape, length / 2.0)


class ModeArrays:
    """Vectorized view of the enumerated spectrum, in canonical order.

    Canonical order is lexicographic on the multi-index with the per-axis
    ranges ascending (negative indices first on periodic axes).  The
    deterministic summation contract relies on this ordering, so it is
    fixed here once.
    """

    def __init__(self, bc: BoundaryConfig, opts: CommutatorOptions):
        validate_config(bc, opts)
        if bc.has_open_axis():
            raise ValueError("discrete spectrum requested for a config with an open axis")
        per_axis_idx = []
        for ax_i, axis in enumerate(bc.axes):
            cutoff = opts.cutoff_for_axis(bc, ax_i)
            per_axis_idx.append(_axis_index_range(axis.kind, cutoff))
        grids = np.meshgrid(*per_axis_idx, indexing="ij")
        index = np.stack([g.ravel() for g in grids], axis=-1)  # (M0, n) lexicographic

        keep = ~np.all(index == 0, axis=1)  # drop the zero mode when present
        index = index[keep]

        n = bc.n
        k = np.empty(index.shape, dtype=np.float64)
        cell = np.ones(index.shape[0], dtype=np.float64)
        for ax_i, axis in enumerate(bc.axes):
            idx = index[:, ax_i]
            k[:, ax_i] = _axis_wavenumber(axis.kind, idx, axis.length)
            cell *= _axis_norm_factors(axis.kind, idx, axis.length)

        omega = np.sqrt(np.sum(k * k, axis=1))
        norm_sq = 1.0 / (2.0 * omega * cell)

        if opts.lanczos_sigma:
            sigma = np.ones(index.shape[0])
            for ax_i in range(n):
                cutoff = opts.cutoff_for_axis(bc, ax_i)
                sigma *= np.sinc(index[:, ax_i] / (cutoff + 1))
            self.sigma_applied = True
        else:
            sigma = None
            self.sigma_applied = False

        eps = opts.resolved_epsilon(bc)
        # 2 N^2 e^{-w eps} (x sigma): everything mode-local folded into one
        # prefactor so the hot kernel touches a single array
        pref = 2.0 * norm_sq * np.exp(-omega * eps)
        if sigma is not None:
            pref = pref * sigma

        per_kinds = [a.kind for a in bc.axes]
        self.bc = bc
        self.opts = opts
        self.epsilon = eps
        self.index = np.ascontiguousarray(index)
        self.k = np.ascontiguousarray(k)
        self.omega = np.ascontiguousarray(omega)
        self.norm = np.sqrt(norm_sq)
        self.pref = np.ascontiguousarray(pref)
        # split axes by role for the kernel: periodic ones contribute a
        # relative phase, Neumann/Dirichlet ones a real product factor
        self.periodic_axes = tuple(i for i, kd in enumerate(per_kinds) if kd is AxisKind.PERIODIC)
        self.real_axes = tuple(i for i, kd in enumerate(per_kinds) if kd in (AxisKind.NEUMANN, AxisKind.DIRICHLET))
        self.real_axis_is_sin = np.array(
            [per_kinds[i] is AxisKind.DIRICHLET for i in self.real_axes], dtype=np.bool_)
        self.k_periodic = np.ascontiguousarray(k[:, list(self.periodic_axes)])
        self.k_real = np.ascontiguousarray(k[:, list(self.real_axes)])

    def __len__(self) -> int:
        return self.index.shape[0]


def enumerate_modes(bc: BoundaryConfig, opts: CommutatorOptions) -> list[Mode]:
    """All modes with |i_l| <= cutoff, zero mode excluded, canonical order."""
    arrays = ModeArrays(bc, opts)
    return [
        Mode(
            index=tuple(int(v) for v in arrays.index[m]),
            k=tuple(float(v) for v in arrays.k[m]),
            omega=float(arrays.omega[m]),
            norm=float(arrays.norm[m]),
        )
        for m in range(len(arrays))
    ]


def mode_norm(bc: BoundaryConfig, index: tuple[int, ...]) -> float:
    """N_I for a single multi-index (KG-orthonormal convention)."""
    if len(index) != bc.n:
        raise DimensionMismatchError(f"index has {len(index)} entries for an n={bc.n} config")
    omega_sq = 0.0
    cell = 1.0
    for ax_i, axis in enumerate(bc.axes):
        idx = np.array([index[ax_i]])
        k = float(_axis_wavenumber(axis.kind, idx, axis.length)[0])
        omega_sq += k * k
        cell *= float(_axis_norm_factors(axis.kind, idx, axis.length)[0])
    omega = math.sqrt(omega_sq)
    if omega == 0.0:
        raise ZeroFrequencyError("the constant mode has no oscillator normalization")
    return 1.0 / math.sqrt(2.0 * omega * cell)


def eval_mode(bc: BoundaryConfig, mode: Mode, t: float, x) -> complex:
    """u_I(t, x) = N_I e^{-i w t} prod_l f_l(x_l)."""
    x = tuple(x)
    if len(x) != bc.n:
        raise DimensionMismatchError(f"event has {len(x)} spatial coordinates for an n={bc.n} config")
    val = mode.norm * np.exp(-1j * mode.omega * t)
    for ax_i, axis in enumerate(bc.axes):
        k = mode.k[ax_i]
        if axis.kind is AxisKind.PERIODIC:
            val = val * np.exp(1j * k * x[ax_i])
        elif axis.kind is AxisKind.NEUMANN:
            val = val * math.cos(k * x[ax_i])
        elif axis.kind is AxisKind.DIRICHLET:
            val = val * math.sin(k * x[ax_i])
        else:
            raise ValueError("open-axis modes are not enumerated discretely")
    return complex(val)
