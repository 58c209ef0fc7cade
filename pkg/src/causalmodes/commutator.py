"""Field commutator evaluators.

The expectation value of [phi(a), phi(b)] splits into an oscillator part
and (for all-periodic/Neumann boxes) a zero-mode part.  The oscillator
part comes from either

* the resummed 1D closed forms (periodic: four logarithms in the double
  null differences; Neumann: eight, including the non-translation-
  invariant combinations u - v' and v - u'),
* a truncated mode sum over the discrete spectrum, or
* a principal-value integral over the continuous label when one axis is
  open (Einstein-cylinder family).

The commutator is a c-number: nothing here takes a field state.

Regulator conventions.  The mode sum damps each term by e^{-w eps},
which keeps every term purely imaginary.  The closed forms insert the
shift w -> w - i*eps literally inside each logarithm; that carries a
real part eps/L which vanishes linearly as eps -> 0.  The two
conventions agree in the limit; the documented oracle tolerance between
them is C1/cutoff + C2*eps.  The closed forms remain finite for eps = 0
anywhere off the null lattice, where the true commutator is singular.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .backend import get_modesum
from .errors import (
    ComputeError,
    DimensionMismatchError,
    NoZeroModeError,
    QuadratureNonConvergenceError,
)
from .geometry import (
    AxisKind,
    BoundaryConfig,
    CommutatorOptions,
    SpacetimeEvent,
    validate_config,
)
from .quadrature import panel_nodes
from .spectrum import ModeArrays

_FOUR_PI = 4.0 * math.pi


@lru_cache(maxsize=4)
def _cached_mode_arrays(bc: BoundaryConfig, opts: CommutatorOptions) -> ModeArrays:
    # both inputs are frozen value objects; arrays are read-only after build
    return ModeArrays(bc, opts)


@dataclass(frozen=True)
class CommutatorResult:
    """Full commutator value with its oscillator/zero-mode split."""

    value: complex
    osc: complex
    zero_mode: complex
    modes_summed: int = 0
    epsilon_used: float = 0.0
    branch_index: Optional[int] = None
    error_estimate: Optional[float] = None
    backend: str = ""
    sigma_applied: bool = False

    @property
    def parts(self) -> dict:
        return {"osc": self.osc, "zero_mode": self.zero_mode}


def zero_mode_commutator(bc: BoundaryConfig, dt: float) -> complex:
    """[phi_zm(t), phi_zm(t')] = -i dt / (spatial volume).

    The constant mode carries a free-particle Hamiltonian P^2/(2V) with
    V the cell volume, so the Heisenberg evolution is linear in t and
    the commutator picks up exactly -i dt / V.  For equal lengths this
    is -i dt / L^n.
    """
    if not bc.has_zero_mode():
        raise NoZeroModeError(
            "configuration has no zero mode (some axis is Dirichlet or open)")
    return -1j * dt / bc.volume()


def _check_event(bc: BoundaryConfig, ev: SpacetimeEvent) -> None:
    if ev.n != bc.n:
        raise DimensionMismatchError(
            f"event has {ev.n} spatial coordinates for an n={bc.n} config")


# ---------------------------------------------------------------------------
# 1D closed forms


def _log_term(w, scale: float, epsilon: float):
    """log(1 - e^{ i scale (w - i eps) }) - log(1 - e^{ -i scale (w - i eps) })."""
    z = scale * (np.asarray(w, dtype=np.float64) - 1j * epsilon)
    return np.log(1.0 - np.exp(1j * z)) - np.log(1.0 - np.exp(-1j * z))


def _log_term_im(w, scale: float, epsilon: float):
    """Imaginary part of _log_term via real arithmetic (hot path).

    arg(1 - d+ e^{i s w}) - arg(1 - d- e^{-i s w}) with d± = e^{± s eps}.
    Exactly on the null lattice (sin(s w) == 0 with the first argument in
    the left half-plane) the commutator steps discontinuously; the value
    there is fixed to the step midpoint, the unique antisymmetric choice.
    """
    phi = scale * np.asarray(w, dtype=np.float64)
    dp = math.exp(scale * epsilon)
    dm = 1.0 / dp
    sin_phi = np.sin(phi)
    cos_phi = np.cos(phi)
    x1 = 1.0 - dp * cos_phi
    first = np.arctan2(-dp * sin_phi, x1)
    first = np.where((sin_phi == 0.0) & (x1 < 0.0), 0.0, first)
    return first - np.arctan2(dm * sin_phi, 1.0 - dm * cos_phi)


def osc_commutator_closed_1d(kind: AxisKind, length: float,
                             a: SpacetimeEvent, b: SpacetimeEvent,
                             epsilon: float) -> complex:
    """Resummed oscillator commutator for a single periodic or Neumann axis.

    Evaluated with principal-branch logarithms term by term.  epsilon may
    be 0 away from the null lattice (the resummation needs no regulator
    there); on the lattice itself the commutator is distributionally
    singular and the logs blow up.
    """
    arr = osc_commutator_closed_1d_grid(
        kind, length, np.asarray(a.t), np.asarray(a.x[0]),
        np.asarray(b.t), np.asarray(b.x[0]), epsilon)
    return complex(arr)


def osc_commutator_closed_1d_grid(kind: AxisKind, length: float,
                                  t, x, tp, xp, epsilon: float, *,
                                  literal: bool = False):
    """Vectorized closed form; broadcasts over event coordinate arrays.

    The log sum's imaginary part is exactly odd under event swap while
    its real part is an exactly even regulator artifact (value eps/L,
    vanishing linearly as eps -> 0).  The commutator is antisymmetric,
    so by default only the odd part is returned; ``literal=True`` keeps
    the raw complex log sum for regulator diagnostics.
    """
    t = np.asarray(t, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    tp = np.asarray(tp, dtype=np.float64)
    xp = np.asarray(xp, dtype=np.float64)
    u, v = t - x, t + x
    up, vp = tp - xp, tp + xp
    term = _log_term if literal else _log_term_im
    if kind is AxisKind.PERIODIC:
        s = 2.0 * math.pi / length
        total = term(u - up, s, epsilon) + term(v - vp, s, epsilon)
    elif kind is AxisKind.NEUMANN:
        s = math.pi / length
        total = (term(u - vp, s, epsilon) + term(v - vp, s, epsilon)
                 + term(u - up, s, epsilon) + term(v - up, s, epsilon))
    else:
        raise ComputeError(f"no 1D closed form for {kind} boundary conditions")
    if literal:
        return total / _FOUR_PI
    return 1j * (total / _FOUR_PI)


def branch_plateau_reference(length: float, dt: float, epsilon: float = 0.0) -> complex:
    """Collapsed single-logarithm value i dt/L + eps/L.

    Cross-check only, never the production path: the collapse assumes no
    log crosses a branch cut, which for spacelike pairs holds when
    |dx|/L >= 1/4.  Pairing it with the zero-mode term gives 0 there.
    """
    return 1j * dt / length + epsilon / length


# ---------------------------------------------------------------------------
# discrete mode sums


def osc_commutator_modesum(bc: BoundaryConfig, a: SpacetimeEvent, b: SpacetimeEvent,
                           opts: CommutatorOptions, *, backend: Optional[str] = None,
                           arrays: Optional[ModeArrays] = None) -> complex:
    """Truncated sum of u_I(a) u_I*(b) - u_I*(a) u_I(b) over the spectrum.

    Terms are built in canonical order and reduced with the configured
    deterministic policy; each term is purely imaginary, so the result
    is exactly i times a real sum.
    """
    _check_event(bc, a)
    _check_event(bc, b)
    if arrays is None:
        arrays = _cached_mode_arrays(bc, opts)
    fn, _ = get_modesum(backend)
    s = _modesum_point(arrays, fn, a.t, np.asarray(a.x), b.t, np.asarray(b.x),
                       opts.summation.value)
    return 1j * s


def _modesum_point(arrays: ModeArrays, fn, ta, xa, tb, xb, policy: str) -> float:
    per = list(arrays.periodic_axes)
    real = list(arrays.real_axes)
    dx_per = (xa[per] - xb[per]) if per else np.zeros(0)
    xa_real = xa[real] if real else np.zeros(0)
    xb_real = xb[real] if real else np.zeros(0)
    return fn(arrays.pref, arrays.omega, arrays.k_periodic, arrays.k_real,
              arrays.real_axis_is_sin, dx_per, xa_real, xb_real, ta - tb, policy)


# ---------------------------------------------------------------------------
# open-axis principal value integral


def einstein_cylinder_commutator(bc: BoundaryConfig, a: SpacetimeEvent, b: SpacetimeEvent,
                                 opts: CommutatorOptions) -> tuple[complex, float, int]:
    """PV mode integral for one open axis plus compact companions.

    The +l and -l branches are combined first, which turns the integrand
    into a single real smooth function of l (no endpoint singularity):

        C = sum_J integral_pv^Lam dl  -(1/(pi V_c w)) R_J sin(w dt - theta_J)
                                       cos(l dy) e^{-w eps}

    where J runs over the compact-axes multi-indices (zero allowed: the
    frequency stays positive almost everywhere on the open label).  The
    panel count follows the phase budget Lam * (|dt| + |dy|); one panel
    doubling gives the error estimate.  Returns (value, error_estimate,
    evaluations).
    """
    validate_config(bc, opts)
    _check_event(bc, a)
    _check_event(bc, b)
    open_axes = bc.open_axes()
    if len(open_axes) != 1:
        raise ComputeError("exactly one open axis required for the PV evaluator")
    if bc.n < 2:
        raise ComputeError("the open-axis evaluator needs at least one compact companion axis")
    open_ax = open_axes[0]
    dy = a.x[open_ax] - b.x[open_ax]
    dt = a.t - b.t
    eps = opts.resolved_epsilon(bc)
    lam = float(opts.open_cutoff)
    pv = float(opts.pv_epsilon)
    if pv >= lam:
        raise ComputeError("pv_epsilon must be below the open-axis cutoff")

    # compact part: enumerate per-axis indices WITHOUT dropping the all-zero
    # row (omega > 0 a.e. thanks to the continuous label)
    compact = [i for i in range(bc.n) if i != open_ax]
    idx_ranges = []
    for ax_i in compact:
        axis = bc.axes[ax_i]
        from .spectrum import _axis_index_range  # local import to avoid cycle at module load
        idx_ranges.append(_axis_index_range(axis.kind, opts.cutoff_for_axis(bc, ax_i)))
    if idx_ranges:
        grids = np.meshgrid(*idx_ranges, indexing="ij")
        index = np.stack([g.ravel() for g in grids], axis=-1).astype(np.float64)
    else:
        index = np.zeros((1, 0))

    kc = np.zeros(index.shape[0])
    theta = np.zeros(index.shape[0])
    r_fac = np.ones(index.shape[0])
    cell = np.ones(index.shape[0])
    from .spectrum import _axis_norm_factors, _axis_wavenumber
    for col, ax_i in enumerate(compact):
        axis = bc.axes[ax_i]
        k = _axis_wavenumber(axis.kind, index[:, col], axis.length)
        kc += k * k
        cell *= _axis_norm_factors(axis.kind, index[:, col], axis.length)
        if axis.kind is AxisKind.PERIODIC:
            theta += k * (a.x[ax_i] - b.x[ax_i])
        elif axis.kind is AxisKind.NEUMANN:
            r_fac *= np.cos(k * a.x[ax_i]) * np.cos(k * b.x[ax_i])
        else:
            r_fac *= np.sin(k * a.x[ax_i]) * np.sin(k * b.x[ax_i])
    kc_sq = kc  # squared compact wavenumber

    def integral(n_panels: int, order: int) -> float:
        nodes, weights = panel_nodes(pv, lam, n_panels, order)
        w = np.sqrt(kc_sq[:, None] + nodes[None, :] ** 2)
        f = (-(1.0 / (math.pi)) / (cell[:, None] * w)
             * r_fac[:, None]
             * np.sin(w * dt - theta[:, None])
             * np.cos(nodes[None, :] * dy)
             * np.exp(-w * eps))
        return float(np.sum(f @ weights))

    # phase budget: the integrand oscillates at most like lam*(|dt|+|dy|)
    base = max(8, int(math.ceil((lam - pv) * (abs(dt) + abs(dy) + 0.5) / 4.0)))
    order = 16
    coarse = integral(base, order)
    evals = index.shape[0] * base * order
    tol = 1e-9 * max(1.0, abs(coarse))
    for _ in range(4):
        fine = integral(2 * base, order)
        evals += index.shape[0] * 2 * base * order
        err = abs(fine - coarse)
        if err <= max(tol, 1e-12):
            return 1j * fine, err, evals
        coarse = fine
        base *= 2
    raise QuadratureNonConvergenceError(
        f"open-axis panel refinement exceeded budget (last change {err:.3e})",
        achieved=err, value=1j * fine)


# ---------------------------------------------------------------------------
# dispatcher


def full_commutator(bc: BoundaryConfig, a: SpacetimeEvent, b: SpacetimeEvent,
                    opts: Optional[CommutatorOptions] = None, *,
                    backend: Optional[str] = None,
                    arrays: Optional[ModeArrays] = None) -> CommutatorResult:
    """Oscillator part from the best evaluator plus the zero-mode part."""
    opts = opts if opts is not None else CommutatorOptions()
    validate_config(bc, opts)
    _check_event(bc, a)
    _check_event(bc, b)
    eps = opts.resolved_epsilon(bc)

    branch = None
    err = None
    backend_used = ""
    modes = 0
    sigma = False
    if bc.has_open_axis():
        osc, err, modes = einstein_cylinder_commutator(bc, a, b, opts)
    elif bc.n == 1 and bc.axes[0].kind in (AxisKind.PERIODIC, AxisKind.NEUMANN):
        osc = osc_commutator_closed_1d(bc.axes[0].kind, bc.axes[0].length, a, b, eps)
        backend_used = "closed"
    else:
        if arrays is None:
            arrays = _cached_mode_arrays(bc, opts)
        _, backend_used = get_modesum(backend)
        osc = osc_commutator_modesum(bc, a, b, opts, backend=backend, arrays=arrays)
        modes = len(arrays)
        sigma = arrays.sigma_applied

    if opts.include_zero_mode and bc.has_zero_mode():
        zm = zero_mode_commutator(bc, a.t - b.t)
    else:
        zm = 0.0 + 0.0j

    value = osc + zm
    if backend_used == "closed":
        # log-branch index of the collapsed identity: the full commutator
        # sits on i*m/2 plateaus away from the null lattice
        branch = int(round(2.0 * value.imag))
    return CommutatorResult(
        value=value, osc=complex(osc), zero_mode=complex(zm),
        modes_summed=modes, epsilon_used=eps, branch_index=branch,
        error_estimate=err, backend=backend_used, sigma_applied=sigma)


def huygens_profile(bc: BoundaryConfig, dx, dt_grid, opts: Optional[CommutatorOptions] = None,
                    *, backend: Optional[str] = None):
    """Commutator profile across a time grid at fixed spatial separation.

    Returns (dt_grid, values, diagnostics).  On a 3-torus with the zero
    mode included the interior-timelike values sit near zero while the
    null crossings spike; the diagnostics record the near-null peak so
    the truncation-induced ringing envelope is visible at a glance.
    """
    opts = opts if opts is not None else CommutatorOptions()
    validate_config(bc, opts)
    dx = tuple(float(v) for v in dx)
    if len(dx) != bc.n:
        raise DimensionMismatchError(f"separation has {len(dx)} components for n={bc.n}")
    dt_grid = np.asarray(dt_grid, dtype=np.float64)
    arrays = _cached_mode_arrays(bc, opts) if not bc.has_open_axis() else None
    origin = SpacetimeEvent(0.0, (0.0,) * bc.n)
    values = np.empty(dt_grid.size, dtype=np.complex128)
    for i, dt in enumerate(dt_grid):
        ev = SpacetimeEvent(float(dt), dx)
        values[i] = full_commutator(bc, ev, origin, opts, backend=backend, arrays=arrays).value
    im = np.abs(values.imag)
    peak_at = int(np.argmax(im))
    diagnostics = {
        "peak_abs_im": float(im[peak_at]),
        "peak_dt": float(dt_grid[peak_at]),
        "modes_summed": len(arrays) if arrays is not None else 0,
        "sigma_applied": bool(arrays.sigma_applied) if arrays is not None else False,
        "epsilon_used": opts.resolved_epsilon(bc),
    }
    return dt_grid, values, diagnostics
