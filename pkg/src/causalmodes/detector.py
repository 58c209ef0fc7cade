"""Second-order two-detector signalling block.

For non-overlapping switchings the lambda_A*lambda_B contribution to the
second detector's density matrix is a double time integral of

    2 chi_A(t) chi_B(t') Re(beta_A e^{i Omega_A t}) Csm(t, x_A, t', x_B)

against a fixed traceless 2x2 matrix of t'-dependent entries

    [ -2 Im(beta_B e^{i Omega_B t'})        -i e^{-i Omega_B t'} (1 - 2 alpha_B) ]
    [  i e^{-i Omega_B t'} (1 - 2 alpha_B)   2 Im(beta_B e^{i Omega_B t'})       ]

implemented verbatim.  Whether that matrix is Hermitian after
integration is checked numerically and reported via ``hermiticity_defect``
(it generally is not: the two off-diagonal integrands are exact
negatives, not conjugates), never asserted.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import ComputeError, OverlappingSupportsError, ValidationError
from .estimator import _smeared_complex, check_nonoverlap, switching_profile
from .geometry import BoundaryConfig, CommutatorOptions, DetectorSpec, validate_config

DEFAULT_ORDER = 48


@dataclass(frozen=True)
class QubitState:
    """Single-qubit density matrix in the (excited, ground) basis:
    diagonal (alpha, 1-alpha), off-diagonal coherence beta."""

    alpha: float
    beta: complex

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValidationError([("BadPopulation", "alpha",
                                    f"alpha must lie in [0, 1], got {self.alpha}")])
        if abs(self.beta) ** 2 > self.alpha * (1.0 - self.alpha) + 1e-12:
            raise ValidationError([("NotPositive", "beta",
                                    "|beta|^2 <= alpha (1 - alpha) required for a "
                                    "positive density matrix")])


@dataclass(frozen=True)
class SignalBlock:
    """The coupling-bilinear contribution to detector B's density matrix."""

    m: np.ndarray                    # 2x2 complex
    hermiticity_defect: float        # ||m - m^dagger||_2, reported not asserted
    error_estimate: float

    def trace(self) -> complex:
        return self.m[0, 0] + self.m[1, 1]


def signal_block(A: DetectorSpec, state_a: QubitState,
                 B: DetectorSpec, state_b: QubitState,
                 bc: BoundaryConfig, opts: Optional[CommutatorOptions] = None, *,
                 order: int = DEFAULT_ORDER,
                 commutator_scale: float = 1.0) -> SignalBlock:
    """Evaluate the printed block by quadrature over both switchings.

    ``commutator_scale`` is a diagnostic hook multiplying Csm, used by
    linearity tests; production callers leave it at 1.
    """
    opts = opts if opts is not None else CommutatorOptions()
    validate_config(bc, opts)
    if A.n != bc.n or B.n != bc.n:
        raise ComputeError("detector dimension does not match the configuration")
    if not check_nonoverlap(A, B, bc):
        raise OverlappingSupportsError("signal block requires non-overlapping supports")

    chi_a = switching_profile(A)
    chi_b = switching_profile(B)

    def evaluate(o: int) -> np.ndarray:
        ta, wa = chi_a.nodes(o)
        tb, wb = chi_b.nodes(o)
        m00 = 0.0 + 0.0j
        m01 = 0.0 + 0.0j
        m10 = 0.0 + 0.0j
        for i in range(ta.size):
            pref_a = 2.0 * wa[i] * (state_a.beta * cmath.exp(1j * A.omega * ta[i])).real
            if pref_a == 0.0:
                continue
            for j in range(tb.size):
                c = commutator_scale * _smeared_complex(bc, A, B, ta[i], tb[j], opts, o)
                base = pref_a * wb[j] * c
                phase_b = cmath.exp(1j * B.omega * tb[j])
                m00 += base * (-2.0 * (state_b.beta * phase_b).imag)
                od = -1j * cmath.exp(-1j * B.omega * tb[j]) * (1.0 - 2.0 * state_b.alpha)
                m01 += base * od
                m10 += base * (-od)
        # the printed diagonal entries are exact negatives
        return np.array([[m00, m01], [m10, -m00]], dtype=np.complex128)

    if chi_a.kind == "delta" and chi_b.kind == "delta":
        m = evaluate(1)
        err = 0.0
    else:
        coarse = evaluate(order)
        m = evaluate(2 * order)
        err = float(np.max(np.abs(m - coarse)))
    defect = float(np.linalg.norm(m - m.conj().T, 2))
    return SignalBlock(m=m, hermiticity_defect=defect, error_estimate=err)


def signal_magnitude(block: SignalBlock) -> float:
    """Spectral norm of the block; zero iff the block vanishes."""
    return float(np.linalg.norm(block.m, 2))
