import numpy as np
import pytest

from causalmodes import (
    AxisKind,
    CommutatorOptions,
    DetectorSpec,
    OverlappingSupportsError,
    Profile,
    SpacetimeEvent,
    check_nonoverlap,
    estimator_complex,
    estimator_E,
    estimator_vs_L,
    full_commutator,
    interval,
    smeared_commutator,
)
from causalmodes.errors import ComputeError

L = 10.0
BC = interval(AxisKind.PERIODIC, L)
OPTS = CommutatorOptions(epsilon=1e-5)


def delta_pair(dx, dt):
    a = DetectorSpec(center=(0.0,), t_on=0.0, t_off=0.0)
    b = DetectorSpec(center=(dx,), t_on=dt, t_off=dt)
    return a, b


def test_profile_integrals_are_unit():
    p = Profile.tophat(0.0, 0.4)
    assert p.integral() == pytest.approx(1.0)
    x, w = p.nodes(16)
    assert np.all((x >= 0.0) & (x <= 0.4))
    assert np.sum(w) == pytest.approx(1.0)
    assert Profile.delta(3.0).integral() == 1.0


def test_nonoverlap_examples():
    a = DetectorSpec(center=(0.0,), sigma=1.0, t_on=0.0, t_off=1.0)
    b = DetectorSpec(center=(5.0,), sigma=1.0, t_on=2.0, t_off=3.0)
    assert check_nonoverlap(a, b, BC)
    # equal switch-off/switch-on: strict inequality required
    b_touch = DetectorSpec(center=(5.0,), sigma=1.0, t_on=1.0, t_off=3.0)
    assert not check_nonoverlap(a, b_touch, BC)
    # wrap-around: 0.4 and 9.8 are only 0.6 apart on the circle
    a_wrap = DetectorSpec(center=(0.4,), sigma=1.0, t_on=0.0, t_off=1.0)
    b_wrap = DetectorSpec(center=(9.8,), sigma=1.0, t_on=2.0, t_off=3.0)
    assert not check_nonoverlap(a_wrap, b_wrap, BC)


def test_pointlike_smearing_collapses_to_bare_commutator():
    a, b = delta_pair(5.0, 0.0)
    for t, tp in [(0.5, 2.5), (3.0, 0.25)]:
        got = smeared_commutator(BC, a, b, t, tp, OPTS)
        want = full_commutator(BC, SpacetimeEvent(t, (0.0,)),
                               SpacetimeEvent(tp, (5.0,)), OPTS).value
        assert got == pytest.approx(want, abs=1e-14)


def test_spacelike_smeared_commutator_vanishes():
    a = DetectorSpec(center=(0.0,), sigma=0.5, t_on=0.0, t_off=0.0)
    b = DetectorSpec(center=(5.0,), sigma=0.5, t_on=0.0, t_off=0.0)
    # supports are 4.5 apart; |t - t'| = 1 keeps every pair spacelike
    c = smeared_commutator(BC, a, b, 0.0, 1.0, OPTS)
    assert abs(c) < 1e-8


def test_osc_only_smeared_value_is_sigma_independent():
    # the zero-mode-exclusion violation i dt/L is spatially constant, so
    # unit-mass smearing leaves it untouched
    opts = OPTS.with_(include_zero_mode=False)
    for sigma in (0.0, 0.5, 1.0):
        a = DetectorSpec(center=(0.0,), sigma=sigma)
        b = DetectorSpec(center=(5.0,), sigma=sigma)
        c = smeared_commutator(BC, a, b, 1.5, 0.0, opts)
        assert c.imag == pytest.approx(1.5 / L, abs=1e-9)


def test_delta_delta_short_circuit():
    a, b = delta_pair(5.0, 2.0)
    e = estimator_E(BC, a, b, OPTS.with_(include_zero_mode=False))
    c = full_commutator(BC, SpacetimeEvent(0.0, (0.0,)), SpacetimeEvent(2.0, (5.0,)),
                        OPTS.with_(include_zero_mode=False)).value
    assert e == pytest.approx(abs(c), abs=1e-15)


def test_overlap_rejected():
    a = DetectorSpec(center=(0.0,), sigma=2.0, t_on=0.0, t_off=1.0)
    b = DetectorSpec(center=(1.0,), sigma=2.0, t_on=2.0, t_off=3.0)
    with pytest.raises(OverlappingSupportsError):
        estimator_E(BC, a, b, OPTS)


def test_estimator_nonnegative_and_swap_modulus():
    a = DetectorSpec(center=(0.0,), sigma=0.4, t_on=0.0, t_off=0.4)
    b = DetectorSpec(center=(4.0,), sigma=0.4, t_on=1.0, t_off=1.4)
    e_ab, _ = estimator_complex(BC, a, b, OPTS, order=16)
    # swapping roles flips the commutator sign; the estimator modulus
    # cannot change
    e_ba, _ = estimator_complex(
        BC,
        DetectorSpec(center=(4.0,), sigma=0.4, t_on=0.0, t_off=0.4),
        DetectorSpec(center=(0.0,), sigma=0.4, t_on=1.0, t_off=1.4),
        OPTS, order=16)
    assert abs(e_ab) >= 0.0
    assert abs(e_ab) == pytest.approx(abs(e_ba), rel=1e-9)


def test_height_scaling_is_quadratic():
    a = DetectorSpec(center=(0.0,), t_on=0.0, t_off=0.5)
    b = DetectorSpec(center=(4.0,), t_on=1.0, t_off=1.5)
    base, _ = estimator_complex(BC, a, b, OPTS, order=24)
    scaled, _ = estimator_complex(BC, a, b, OPTS, order=24,
                                  chi_height_a=3.0 * 2.0, chi_height_b=3.0 * 2.0)
    assert abs(scaled) == pytest.approx(9.0 * abs(base), rel=1e-12)


def test_error_estimate_covers_doubling():
    a = DetectorSpec(center=(0.0,), sigma=0.5, t_on=0.0, t_off=0.5)
    b = DetectorSpec(center=(2.0,), sigma=0.5, t_on=1.0, t_off=1.5)
    e16, err16 = estimator_complex(BC, a, b, OPTS, order=16)
    e32, _ = estimator_complex(BC, a, b, OPTS, order=32)
    assert abs(e32 - e16) <= max(err16, 1e-12)


def test_zero_mode_additivity_in_complex_intermediate():
    # the two runs differ exactly by the switching-weighted analytic term
    a = DetectorSpec(center=(0.0,), t_on=0.0, t_off=0.5)
    b = DetectorSpec(center=(5.0,), t_on=1.0, t_off=1.5)
    full, _ = estimator_complex(BC, a, b, OPTS, order=32)
    osc, _ = estimator_complex(BC, a, b, OPTS.with_(include_zero_mode=False), order=32)
    # integral of chi_A chi_B (-i (t - t')/L): mean switching times
    mean_a, mean_b = 0.25, 1.25
    assert (full - osc) == pytest.approx(-1j * (mean_a - mean_b) / L, abs=1e-10)


def test_estimator_vs_L_scan():
    opts = OPTS.with_(include_zero_mode=False, epsilon=None)
    lengths = [float(v) for v in np.geomspace(10.0, 160.0, 16)]
    res = estimator_vs_L(lengths, 5.0, [1.0, 2.0], opts,
                         spacelike_dt=2.0, timelike_dx=2.0, timelike_dt=4.0)
    assert res.fit_exponent == pytest.approx(-1.0, abs=0.05)
    # spacelike branch decreases monotonically with L
    assert all(x > y for x, y in zip(res.e_spacelike, res.e_spacelike[1:]))
    # timelike branch levels off
    top = res.e_timelike[-4:]
    assert (top.max() - top.min()) / top.max() < 0.05


def test_estimator_vs_L_requires_osc_only():
    with pytest.raises(ComputeError):
        estimator_vs_L([10.0], 5.0, [1.0], OPTS)


def test_tophat_curves_approach_delta_limit():
    # shrinking switching duration (and detector size with it) walks the
    # top-hat estimator toward the delta/pointlike curve
    gap = 1.0
    ds = [0.3 + 0.25 * k for k in range(8)]
    ref = {}
    for D in ds:
        a, b = delta_pair(D, gap)
        ref[D] = estimator_E(BC, a, b, OPTS)
    prev = None
    for ratio in (1.0, 0.5, 0.25):
        delta = ratio * gap
        devs = []
        for D in ds:
            a = DetectorSpec(center=(0.0,), sigma=delta, t_on=0.0, t_off=delta)
            b = DetectorSpec(center=(delta + D,), sigma=delta,
                             t_on=delta + gap, t_off=2 * delta + gap)
            devs.append(abs(estimator_E(BC, a, b, OPTS, order=16) - ref[D]))
        mx = max(devs)
        if prev is not None:
            assert mx < prev
        prev = mx
