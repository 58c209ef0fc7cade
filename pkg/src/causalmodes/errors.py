"""Exception hierarchy shared across the package.

CLI exit-code mapping: configuration problems (ConfigError subclasses)
exit with 2, numerical/compute problems (ComputeError subclasses) with 3.
"""

from __future__ import annotations


class CausalModesError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(CausalModesError):
    """Invalid configuration or input data."""


class ValidationError(ConfigError):
    """One or more invariants violated.

    Carries every violation found, not just the first, so a caller can
    report the full list.  Each violation is a (code, field, message)
    triple, e.g. ``("NonPositiveLength", "axes[0].length", "...")``.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        lines = [f"{code} at {field}: {msg}" for code, field, msg in self.violations]
        super().__init__("; ".join(lines))


class ConfigParseError(ConfigError):
    """Scenario file could not be parsed at all."""


class ComputeError(CausalModesError):
    """Numerical evaluation failed."""


class NoZeroModeError(ComputeError):
    """Zero-mode quantity requested for a configuration without one."""


class ZeroFrequencyError(ComputeError):
    """A zero-frequency index reached an oscillator-only code path."""


class DimensionMismatchError(ComputeError):
    """Event dimension does not match the boundary configuration."""


class OverlappingSupportsError(ComputeError):
    """Detector smearing/switching supports overlap; estimator undefined."""


class QuadratureNonConvergenceError(ComputeError):
    """Adaptive quadrature exhausted its refinement budget.

    ``achieved`` holds the last error estimate so callers can decide
    whether the partial result is still useful.
    """

    def __init__(self, message, achieved=None, value=None):
        super().__init__(message)
        self.achieved = achieved
        self.value = value
