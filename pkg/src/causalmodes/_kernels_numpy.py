"""Pure-numpy oscillator mode-sum kernel (fallback backend).

Each enumerated mode contributes the purely imaginary term

    u_I(a) u_I*(b) - u_I*(a) u_I(b) = i * pref_I * R_I * sin(theta_I - w_I dt)

with pref_I = 2 N_I^2 e^{-w eps} (damping folded in upstream), theta_I
the periodic-axis phase k.(x_a - x_b) and R_I the product of the real
Neumann/Dirichlet axis factors.  The kernel returns the real sum; the
caller multiplies by 1j.
"""

from __future__ import annotations

import numpy as np

from .summation import reduce_terms


def modesum_terms(pref, omega, k_per, k_real, real_is_sin, dx_per, xa_real, xb_real, dt):
    theta = k_per @ dx_per if k_per.shape[1] else np.zeros(pref.shape[0])
    r = pref
    for j in range(k_real.shape[1]):
        kj = k_real[:, j]
        if real_is_sin[j]:
            r = r * (np.sin(kj * xa_real[j]) * np.sin(kj * xb_real[j]))
        else:
            r = r * (np.cos(kj * xa_real[j]) * np.cos(kj * xb_real[j]))
    return r * np.sin(theta - omega * dt)


def modesum_reduce(pref, omega, k_per, k_real, real_is_sin, dx_per, xa_real, xb_real, dt, policy):
    terms = modesum_terms(pref, omega, k_per, k_real, real_is_sin, dx_per, xa_real, xb_real, dt)
    return reduce_terms(terms, policy)
