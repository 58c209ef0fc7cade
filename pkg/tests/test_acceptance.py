"""Acceptance gate: one test per acceptance criterion, each printing a
PASS/FAIL line with its measured figure of merit (run with -s to see
them).  Tolerances are pinned here, not tuned elsewhere.
"""

import math
import os
import subprocess
import sys
import time

import numpy as np
import pytest

from causalmodes import (
    AxisKind,
    AxisSpec,
    BoundaryConfig,
    CommutatorOptions,
    DetectorSpec,
    QubitState,
    SpacetimeEvent,
    estimator_E,
    estimator_vs_L,
    full_commutator,
    einstein_cylinder_commutator,
    interval,
    osc_commutator_closed_1d,
    osc_commutator_modesum,
    signal_block,
    torus,
    zero_mode_commutator,
)
from causalmodes.presets import PRESET_IDS


def _report(name: str, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}  ({detail})")
    assert ok, f"{name}: {detail}"


def _delta_pair(dx, dt, n=1):
    a = DetectorSpec(center=(0.0,) * n, t_on=0.0, t_off=0.0)
    center_b = (dx,) + (0.0,) * (n - 1)
    b = DetectorSpec(center=center_b, t_on=dt, t_off=dt)
    return a, b


def test_microcausality_fig1b():
    t0 = time.time()
    bc = interval(AxisKind.PERIODIC, 10.0)
    opts = CommutatorOptions()  # default epsilon 1e-6 * L
    worst = 0.0
    for dt in np.linspace(4.9 / 50, 4.9, 50):
        a, b = _delta_pair(5.0, float(dt))
        worst = max(worst, estimator_E(bc, a, b, opts))
    elapsed = time.time() - t0
    _report("microcausality-fig1b", worst < 1e-5 and elapsed < 1.0,
            f"max|E|={worst:.3e}, {elapsed:.2f}s")


def test_zero_mode_exclusion_fig1a():
    t0 = time.time()
    bc = interval(AxisKind.PERIODIC, 10.0)
    opts = CommutatorOptions(include_zero_mode=False)
    worst = 0.0
    for dt in np.linspace(4.9 / 50, 4.9, 50):
        a, b = _delta_pair(5.0, float(dt))
        worst = max(worst, abs(estimator_E(bc, a, b, opts) - dt / 10.0))
    elapsed = time.time() - t0
    _report("zero-mode-exclusion-fig1a", worst < 1e-5 and elapsed < 1.0,
            f"max|E - dt/10|={worst:.3e}, {elapsed:.2f}s")


def test_closed_form_vs_modesum_oracle():
    # randomized event pairs, kept 0.05 L clear of the null lattice where
    # the documented tolerance model C1/cutoff + C2*eps degrades
    t0 = time.time()
    L, eps, cutoff = 10.0, 1e-4, 10_000
    rng = np.random.default_rng(2024)
    checked, worst = 0, 0.0
    while checked < 100:
        kind = AxisKind.PERIODIC if checked % 2 == 0 else AxisKind.NEUMANN
        t, tp = rng.uniform(-8, 8, size=2)
        x, xp = rng.uniform(0, L, size=2)
        period = L if kind is AxisKind.PERIODIC else 2 * L
        combos = [t - x - (tp - xp), t + x - (tp + xp)]
        if kind is AxisKind.NEUMANN:
            combos += [t - x - (tp + xp), t + x - (tp - xp)]
        if any(min(abs(w) % period, period - abs(w) % period) < 0.05 * L for w in combos):
            continue
        checked += 1
        bc = interval(kind, L)
        opts = CommutatorOptions(epsilon=eps, cutoffs=cutoff, include_zero_mode=False)
        a, b = SpacetimeEvent(t, (x,)), SpacetimeEvent(tp, (xp,))
        ms = osc_commutator_modesum(bc, a, b, opts)
        cf = osc_commutator_closed_1d(kind, L, a, b, eps)
        worst = max(worst, abs(ms - cf))
    elapsed = time.time() - t0
    _report("closed-vs-modesum-oracle", worst < 5e-3 and elapsed < 30.0,
            f"max|closed-sum|={worst:.3e} over 100 pairs, {elapsed:.1f}s")


def test_zero_mode_formula_and_torus_suppression():
    t0 = time.time()
    rng = np.random.default_rng(7)
    exact = True
    for _ in range(20):
        n = int(rng.integers(1, 4))
        L = float(rng.uniform(0.5, 20.0))
        dt = float(rng.uniform(-10.0, 10.0))
        got = zero_mode_commutator(torus(n, L), dt)
        want = -1j * dt / math.prod([L] * n)
        exact = exact and got == want
    grid = np.linspace(0.4, 5.0, 12)
    maxes = {}
    for cut in (100, 200):
        bc = torus(2, 10.0)
        opts = CommutatorOptions(cutoffs=cut)
        vals = [abs(full_commutator(bc, SpacetimeEvent(float(dt), (5.0, 2.0)),
                                    SpacetimeEvent(0.0, (0.0, 0.0)), opts).value)
                for dt in grid]
        maxes[cut] = max(vals)
    elapsed = time.time() - t0
    ok = exact and maxes[100] < 5e-2 and maxes[200] < maxes[100] and elapsed < 300.0
    _report("zero-mode-formula+torus", ok,
            f"exact={exact}, max100={maxes[100]:.3e}, max200={maxes[200]:.3e}, {elapsed:.1f}s")


def test_polynomial_suppression():
    t0 = time.time()
    # n = 1: closed form, exact up to the regulator's quadratic remainder
    bc1 = interval(AxisKind.PERIODIC, 10.0)
    opts1 = CommutatorOptions(include_zero_mode=False)
    worst1 = max(abs(full_commutator(bc1, SpacetimeEvent(dt, (5.0,)),
                                     SpacetimeEvent(0.0, (0.0,)), opts1).value.imag - dt / 10.0)
                 for dt in (1.0, 2.0, 3.0, 4.0))
    # n = 2: raw partial sums at 100^2
    bc2 = torus(2, 10.0)
    opts2 = CommutatorOptions(cutoffs=100, include_zero_mode=False)
    worst2 = max(abs(osc_commutator_modesum(bc2, SpacetimeEvent(dt, (5.0, 2.0)),
                                            SpacetimeEvent(0.0, (0.0, 0.0)), opts2).imag
                     - dt / 100.0)
                 for dt in (1.0, 2.0, 3.0))
    # n = 3: 30^3 partial sums ring at O(1) near the cone; the sigma-
    # smoothed evaluation (recorded in diagnostics) restores pointwise
    # convergence on the interior spacelike grid
    bc3 = torus(3, 1.0)
    opts3 = CommutatorOptions(cutoffs=30, include_zero_mode=False, lanczos_sigma=True)
    worst3 = max(abs(osc_commutator_modesum(bc3, SpacetimeEvent(dt, (0.5, 0.0, 0.0)),
                                            SpacetimeEvent(0.0, (0.0, 0.0, 0.0)), opts3).imag
                     - dt / 1.0)
                 for dt in np.linspace(0.05, 0.40, 8))
    elapsed = time.time() - t0
    ok = worst1 < 1e-8 and worst2 < 5e-2 and worst3 < 1e-1 and elapsed < 600.0
    _report("polynomial-suppression", ok,
            f"n1={worst1:.2e}, n2={worst2:.2e}, n3={worst3:.2e} (sigma-smoothed), {elapsed:.1f}s")


def test_annulus_no_zero_mode():
    t0 = time.time()
    bc = BoundaryConfig((AxisSpec(AxisKind.PERIODIC, 10.0),
                         AxisSpec(AxisKind.DIRICHLET, 10.0)))
    grid = np.linspace(0.4, 4.5, 10)
    maxes = {}
    for cut in (50, 100):
        opts = CommutatorOptions(cutoffs=cut)
        maxes[cut] = max(abs(full_commutator(bc, SpacetimeEvent(float(dt), (5.0, 5.0)),
                                             SpacetimeEvent(0.0, (0.0, 5.0)), opts).value)
                         for dt in grid)
    torus_violation = max(grid) / 10.0**2
    elapsed = time.time() - t0
    ok = (maxes[100] < maxes[50] and maxes[50] < torus_violation
          and maxes[100] < torus_violation and elapsed < 300.0)
    _report("annulus-no-zero-mode", ok,
            f"max50={maxes[50]:.3e} > max100={maxes[100]:.3e}, bound={torus_violation:.3e}, "
            f"{elapsed:.1f}s")


def test_einstein_cylinder_pv():
    t0 = time.time()
    bc = BoundaryConfig((AxisSpec(AxisKind.PERIODIC, 10.0), AxisSpec(AxisKind.OPEN)))
    grid = (1.0, 2.0, 3.0, 4.0, 4.5)
    seq = []
    for pv in (1e-1, 1e-2, 1e-3):
        opts = CommutatorOptions(epsilon=1e-5, cutoffs=(50, 1), open_cutoff=50.0,
                                 pv_epsilon=pv)
        seq.append(max(abs(einstein_cylinder_commutator(
            bc, SpacetimeEvent(dt, (5.0, 2.0)), SpacetimeEvent(0.0, (0.0, 0.0)), opts)[0])
            for dt in grid))
    elapsed = time.time() - t0
    ok = seq[0] > seq[1] > seq[2] and seq[2] < 1e-2 and elapsed < 300.0
    _report("einstein-cylinder-pv", ok,
            f"|C| along pv: {seq[0]:.4e} > {seq[1]:.4e} > {seq[2]:.4e} < 1e-2, {elapsed:.1f}s")


def test_strong_huygens():
    t0 = time.time()
    bc = torus(3, 1.0)
    opts = CommutatorOptions(cutoffs=30)
    origin = SpacetimeEvent(0.0, (0.0, 0.0, 0.0))

    def im_at(dt):
        return abs(full_commutator(bc, SpacetimeEvent(float(dt), (0.5, 0.0, 0.0)),
                                   origin, opts).value.imag)

    peak = max(im_at(dt) for dt in np.arange(0.40, 0.601, 0.005))
    interior = np.median([im_at(dt) for dt in np.arange(0.70, 0.951, 0.01)])
    elapsed = time.time() - t0
    ok = interior < 0.05 * peak and elapsed < 600.0
    _report("strong-huygens", ok,
            f"interior median={interior:.3f} vs peak={peak:.2f} "
            f"({interior / peak:.2%}), {elapsed:.1f}s")


def test_smearing_switching_convergence():
    t0 = time.time()
    bc = interval(AxisKind.PERIODIC, 10.0)
    opts = CommutatorOptions(epsilon=1e-5)
    gap = 1.0
    ds = [0.3 + 0.25 * k for k in range(12)]
    ref = {}
    for D in ds:
        a, b = _delta_pair(D, gap)
        ref[D] = estimator_E(bc, a, b, opts)
    devs = []
    for ratio in (1.0, 0.5, 0.25, 0.125):
        delta = ratio * gap
        worst = 0.0
        for D in ds:
            a = DetectorSpec(center=(0.0,), sigma=delta, t_on=0.0, t_off=delta)
            b = DetectorSpec(center=(delta + D,), sigma=delta,
                             t_on=delta + gap, t_off=2 * delta + gap)
            worst = max(worst, abs(estimator_E(bc, a, b, opts, order=16) - ref[D]))
        devs.append(worst)
    elapsed = time.time() - t0
    ok = all(x > y for x, y in zip(devs, devs[1:])) and elapsed < 300.0
    _report("smearing-convergence-fig3", ok,
            "max dev " + " > ".join(f"{d:.4f}" for d in devs) + f", {elapsed:.1f}s")


def test_estimator_vs_length():
    t0 = time.time()
    opts = CommutatorOptions(include_zero_mode=False)
    lengths = [float(v) for v in np.geomspace(10.0, 160.0, 16)]
    res = estimator_vs_L(lengths, 5.0, [2.0], opts,
                         spacelike_dt=2.0, timelike_dx=2.0, timelike_dt=4.0)
    top = res.e_timelike[np.asarray(res.lengths) >= 85.0]
    variation = (top.max() - top.min()) / top.max()
    elapsed = time.time() - t0
    ok = abs(res.fit_exponent + 1.0) <= 0.05 and variation < 0.05 and elapsed < 120.0
    _report("estimator-vs-L-fig2", ok,
            f"exponent={res.fit_exponent:.4f}, timelike top-half variation={variation:.2%}, "
            f"{elapsed:.1f}s")


def test_detector_dynamics_block():
    bc = interval(AxisKind.PERIODIC, 10.0)
    coherent = QubitState(alpha=0.5, beta=0.3 + 0.1j)
    a = DetectorSpec(center=(0.0,), t_on=0.0, t_off=0.5, omega=1.0)
    b = DetectorSpec(center=(5.0,), t_on=2.0, t_off=2.5, omega=0.7)
    # regulator at the closed-form limit: the commutator vanishes on the
    # whole spacelike integration domain
    blk = signal_block(a, coherent, b, coherent, bc,
                       CommutatorOptions(epsilon=1e-30), order=16)
    trace_ok = abs(blk.trace()) < 1e-14
    zero_ok = float(np.max(np.abs(blk.m))) < 1e-10
    opts_osc = CommutatorOptions(epsilon=1e-30, include_zero_mode=False)
    b1 = signal_block(a, QubitState(0.5, 0.1), b, coherent, bc, opts_osc, order=10)
    b5 = signal_block(a, QubitState(0.5, 0.5), b, coherent, bc, opts_osc, order=10)
    lin = float(np.max(np.abs(b5.m - 5.0 * b1.m)))
    lin_ok = lin < 1e-12 * max(1.0, float(np.max(np.abs(b5.m))))
    _report("detector-dynamics", trace_ok and zero_ok and lin_ok,
            f"|trace|={abs(blk.trace()):.1e}, max entry={np.max(np.abs(blk.m)):.2e}, "
            f"linearity residual={lin:.2e}")


@pytest.mark.parametrize("preset", PRESET_IDS)
def test_thread_determinism(preset, tmp_path):
    out1 = tmp_path / "t1"
    out8 = tmp_path / "t8"
    for out, threads in ((out1, "1"), (out8, "8")):
        r = subprocess.run(
            [sys.executable, "-m", "causalmodes.cli", "figure", preset,
             "--out", str(out), "--threads", threads],
            capture_output=True, text=True)
        assert r.returncode == 0, r.stderr
    csvs = sorted(p.name for p in out1.glob("*.csv"))
    assert csvs
    same = all((out1 / name).read_bytes() == (out8 / name).read_bytes() for name in csvs)
    _report(f"determinism-{preset}", same, f"{len(csvs)} CSVs byte-compared")
