"""Numba-compiled mode-sum kernel (default backend when numba is present).

Mirrors _kernels_numpy term-for-term; the pairwise reduction tree is the
same fixed tree (blocks of 64, then adjacent pairs), so results are
scheduling-independent here too.  fastmath stays off: reassociation
would break the determinism contract.
"""

from __future__ import annotations

import math
import threading

import numpy as np
import numba
from numba import njit, prange

# workqueue is bundled with numba and avoids the TBB version probe; it is
# not safe for parallel regions launched from several threads at once, so
# kernel launches serialize on _LAUNCH (modes still fan out inside numba)
numba.config.THREADING_LAYER = "workqueue"
_LAUNCH = threading.Lock()


@njit(cache=True, nogil=True)
def _pairwise(a):
    m = a.shape[0]
    if m == 0:
        return 0.0
    work = a.copy()
    while m > 1:
        half = m // 2
        for i in range(half):
            work[i] = work[2 * i] + work[2 * i + 1]
        if m % 2:
            work[half] = work[m - 1]
            m = half + 1
        else:
            m = half
    return work[0]


@njit(cache=True, nogil=True)
def _neumaier(a):
    s = 0.0
    c = 0.0
    for i in range(a.shape[0]):
        t = s + a[i]
        if abs(s) >= abs(a[i]):
            c += (s - t) + a[i]
        else:
            c += (a[i] - t) + s
        s = t
    return s + c


@njit(cache=True, nogil=True, parallel=True)
def _terms(pref, omega, k_per, k_real, real_is_sin, dx_per, xa_real, xb_real, dt, out):
    # parallel fill is scheduling-independent: every slot is written once,
    # independently; ordering enters only through the reduction tree
    m = pref.shape[0]
    p = k_per.shape[1]
    q = k_real.shape[1]
    for i in prange(m):
        theta = 0.0
        for j in range(p):
            theta += k_per[i, j] * dx_per[j]
        r = pref[i]
        for j in range(q):
            kj = k_real[i, j]
            if real_is_sin[j]:
                r *= math.sin(kj * xa_real[j]) * math.sin(kj * xb_real[j])
            else:
                r *= math.cos(kj * xa_real[j]) * math.cos(kj * xb_real[j])
        out[i] = r * math.sin(theta - omega[i] * dt)
    return out


def modesum_reduce(pref, omega, k_per, k_real, real_is_sin, dx_per, xa_real, xb_real, dt, policy):
    out = np.empty(pref.shape[0], dtype=np.float64)
    with _LAUNCH:
        _terms(pref, omega, k_per, k_real, real_is_sin.astype(np.bool_),
               np.ascontiguousarray(dx_per), np.ascontiguousarray(xa_real),
               np.ascontiguousarray(xb_real), dt, out)
    if policy == "pairwise":
        return float(_pairwise(out))
    if policy == "compensated":
        return float(_neumaier(out))
    raise ValueError(f"unknown summation policy {policy!r}")
