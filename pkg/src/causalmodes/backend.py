"""Kernel backend selection.

The hot mode-sum loop runs through numba by default; setting the
environment variable ``CAUSAL_MODES_BACKEND=numpy`` (or a missing numba
install) selects the pure-numpy fallback.  Both backends honour the same
canonical ordering and reduction tree; they differ only in the last few
ulps of the libm/SIMD trig evaluations.
"""

from __future__ import annotations

import os

_ENV_VAR = "CAUSAL_MODES_BACKEND"
_VALID = ("numba", "numpy")


def default_backend() -> str:
    choice = os.environ.get(_ENV_VAR, "").strip().lower()
    if choice and choice not in _VALID:
        raise ValueError(f"{_ENV_VAR} must be one of {_VALID}, got {choice!r}")
    if choice == "numpy":
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        return "numpy"
    return "numba"


def get_modesum(backend: str | None = None):
    name = backend or default_backend()
    if name == "numba":
        from . import _kernels_numba

        return _kernels_numba.modesum_reduce, "numba"
    if name == "numpy":
        from . import _kernels_numpy

        return _kernels_numpy.modesum_reduce, "numpy"
    raise ValueError(f"unknown backend {name!r}")
