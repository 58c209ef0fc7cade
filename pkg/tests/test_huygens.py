import numpy as np
import pytest

from causalmodes import (
    CommutatorOptions,
    DimensionMismatchError,
    huygens_profile,
    torus,
)


def test_huygens_profile_shape_and_diagnostics():
    bc = torus(3, 1.0)
    opts = CommutatorOptions(cutoffs=12)
    grid = np.arange(0.0, 1.21, 0.02)
    dt, vals, diag = huygens_profile(bc, (0.5, 0.0, 0.0), grid, opts)
    assert vals.shape == grid.shape
    assert vals[0] == 0.0  # coincident times
    # the ringing envelope is recorded and peaks at a null crossing (the
    # torus has image cones at 0.5, sqrt(0.5^2 + 1), ...)
    crossings = (0.5, np.sqrt(0.5**2 + 1.0))
    assert min(abs(diag["peak_dt"] - c) for c in crossings) < 0.1
    assert diag["modes_summed"] == 25**3 - 1
    # interior-timelike window sits far below the near-null spike
    interior = np.abs(vals.imag[(dt >= 0.7) & (dt <= 0.95)])
    assert np.median(interior) < 0.25 * diag["peak_abs_im"]


def test_zero_mode_difference_is_analytic():
    bc = torus(3, 1.0)
    grid = np.linspace(0.1, 1.0, 7)
    _, with_zm, _ = huygens_profile(bc, (0.5, 0.0, 0.0), grid, CommutatorOptions(cutoffs=6))
    _, without, _ = huygens_profile(
        bc, (0.5, 0.0, 0.0), grid, CommutatorOptions(cutoffs=6, include_zero_mode=False))
    # the two runs differ exactly by -i dt / L^3
    assert np.allclose((without - with_zm).imag, grid / 1.0**3, rtol=0, atol=1e-14)
    assert np.allclose((without - with_zm).real, 0.0)


def test_dimension_mismatch_rejected():
    with pytest.raises(DimensionMismatchError):
        huygens_profile(torus(3, 1.0), (0.5, 0.0), [0.1], CommutatorOptions(cutoffs=4))
