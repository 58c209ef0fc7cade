"""Mode-sum field commutators and detector-signalling causality estimators
for massless scalar fields in compact spatial topologies."""

from .backend import default_backend
from .commutator import (
    CommutatorResult,
    branch_plateau_reference,
    einstein_cylinder_commutator,
    full_commutator,
    huygens_profile,
    osc_commutator_closed_1d,
    osc_commutator_modesum,
    zero_mode_commutator,
)
from .detector import QubitState, SignalBlock, signal_block, signal_magnitude
from .errors import (
    CausalModesError,
    ComputeError,
    ConfigError,
    ConfigParseError,
    DimensionMismatchError,
    NoZeroModeError,
    OverlappingSupportsError,
    QuadratureNonConvergenceError,
    ValidationError,
    ZeroFrequencyError,
)
from .estimator import (
    Profile,
    check_nonoverlap,
    estimator_E,
    estimator_complex,
    estimator_vs_L,
    smeared_commutator,
)
from .geometry import (
    AxisKind,
    AxisSpec,
    BoundaryConfig,
    CommutatorOptions,
    DetectorSpec,
    SpacetimeEvent,
    Summation,
    interval,
    torus,
    validate_config,
)
from .spectrum import Mode, ModeArrays, enumerate_modes, eval_mode, mode_norm

__version__ = "0.1.0"

__all__ = [
    "AxisKind", "AxisSpec", "BoundaryConfig", "CommutatorOptions", "CommutatorResult",
    "DetectorSpec", "Mode", "ModeArrays", "Profile", "QubitState", "SignalBlock",
    "SpacetimeEvent", "Summation",
    "branch_plateau_reference", "check_nonoverlap", "default_backend",
    "einstein_cylinder_commutator", "enumerate_modes", "estimator_E",
    "estimator_complex", "estimator_vs_L", "eval_mode", "full_commutator",
    "huygens_profile", "interval", "mode_norm", "osc_commutator_closed_1d",
    "osc_commutator_modesum", "signal_block", "signal_magnitude",
    "smeared_commutator", "torus", "validate_config", "zero_mode_commutator",
    "CausalModesError", "ComputeError", "ConfigError", "ConfigParseError",
    "DimensionMismatchError", "NoZeroModeError", "OverlappingSupportsError",
    "QuadratureNonConvergenceError", "ValidationError", "ZeroFrequencyError",
]
