import math

import numpy as np
import pytest

from causalmodes.summation import compensated_sum, pairwise_sum
from causalmodes import _kernels_numba


@pytest.mark.parametrize("n", [0, 1, 2, 63, 64, 65, 128, 129, 1000])
def test_pairwise_matches_fsum(n):
    rng = np.random.default_rng(42 + n)
    a = rng.standard_normal(n)
    exact = math.fsum(a)
    assert pairwise_sum(a) == pytest.approx(exact, abs=1e-12 * max(1, n))


def test_pairwise_numpy_and_numba_bitwise_equal():
    # same fixed tree, same IEEE adds: identical to the last bit
    rng = np.random.default_rng(7)
    for n in (1, 64, 65, 130, 4097):
        a = rng.standard_normal(n) * rng.choice([1e-12, 1.0, 1e12], size=n)
        assert pairwise_sum(a) == _kernels_numba._pairwise(a)


def test_compensated_handles_cancellation():
    # alternating large/small values that defeat naive summation
    a = np.tile([1e16, 1.0, -1e16], 1000).astype(np.float64)
    assert compensated_sum(a) == 1000.0
    assert _kernels_numba._neumaier(a) == 1000.0


def test_empty_and_singleton():
    assert pairwise_sum(np.array([])) == 0.0
    assert pairwise_sum(np.array([3.5])) == 3.5
    assert _kernels_numba._pairwise(np.array([3.5])) == 3.5
