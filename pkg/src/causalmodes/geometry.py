"""Domain vocabulary: events, boundary configurations, detectors, options.

All types are frozen dataclasses (immutable value objects) and safe to
share between threads.  Natural units c = hbar = 1 throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Sequence, Union

from .errors import ValidationError


class AxisKind(str, Enum):
    PERIODIC = "periodic"
    NEUMANN = "neumann"
    DIRICHLET = "dirichlet"
    OPEN = "open"


# Axis kinds whose constant spatial eigenfunction is admissible.  A zero
# mode exists only when every axis is in this set.
_CONSTANT_OK = frozenset({AxisKind.PERIODIC, AxisKind.NEUMANN})


@dataclass(frozen=True)
class AxisSpec:
    """One spatial axis: boundary-condition kind plus length.

    ``length`` must be a positive real for the discrete kinds and None
    for an open (continuous-spectrum) axis.
    """

    kind: AxisKind
    length: Optional[float] = None

    def is_discrete(self) -> bool:
        return self.kind is not AxisKind.OPEN


@dataclass(frozen=True)
class SpacetimeEvent:
    """A time coordinate plus an n-vector of spatial coordinates."""

    t: float
    x: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(float(v) for v in self.x))
        object.__setattr__(self, "t", float(self.t))
        if not math.isfinite(self.t) or not all(math.isfinite(v) for v in self.x):
            raise ValidationError([("NonFiniteCoordinate", "event", "coordinates must be finite reals")])

    @property
    def n(self) -> int:
        return len(self.x)


@dataclass(frozen=True)
class BoundaryConfig:
    """Per-axis boundary conditions; fixes the mode spectrum."""

    axes: tuple[AxisSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "axes", tuple(self.axes))

    @property
    def n(self) -> int:
        return len(self.axes)

    def has_zero_mode(self) -> bool:
        """True iff the spatially constant eigenfunction is admissible on
        every axis, i.e. all axes are periodic or Neumann."""
        return all(a.kind in _CONSTANT_OK for a in self.axes)

    def has_open_axis(self) -> bool:
        return any(a.kind is AxisKind.OPEN for a in self.axes)

    def discrete_axes(self) -> tuple[int, ...]:
        return tuple(i for i, a in enumerate(self.axes) if a.is_discrete())

    def open_axes(self) -> tuple[int, ...]:
        return tuple(i for i, a in enumerate(self.axes) if not a.is_discrete())

    def volume(self) -> float:
        """Spatial volume of the integration cell (discrete axes only)."""
        v = 1.0
        for a in self.axes:
            if a.is_discrete():
                v *= a.length
        return v

    def min_length(self) -> float:
        ls = [a.length for a in self.axes if a.is_discrete()]
        return min(ls) if ls else 1.0


def torus(n: int, length: float) -> BoundaryConfig:
    """All-periodic box with equal side lengths (the common preset case)."""
    return BoundaryConfig(tuple(AxisSpec(AxisKind.PERIODIC, length) for _ in range(n)))


def interval(kind: AxisKind, length: float) -> BoundaryConfig:
    return BoundaryConfig((AxisSpec(kind, length),))


class Summation(str, Enum):
    PAIRWISE = "pairwise"           # fixed adjacent-pair reduction tree
    COMPENSATED = "compensated"     # serial compensated (Neumaier) sum


@dataclass(frozen=True)
class CommutatorOptions:
    """Numerical knobs for the commutator evaluators.

    cutoffs       per discrete axis: largest |index| kept in the mode sum
    open_cutoff   momentum truncation for an open axis
    epsilon       regulator; None means the 1e-6 * min(L) default
    pv_epsilon    principal-value exclusion half-width (open axis)
    lanczos_sigma apply per-axis sigma factors to partial sums; recorded
                  in diagnostics whenever active
    """

    epsilon: Optional[float] = None
    cutoffs: Union[int, tuple] = 100
    include_zero_mode: bool = True
    pv_epsilon: float = 1e-3
    open_cutoff: float = 50.0
    summation: Summation = Summation.PAIRWISE
    lanczos_sigma: bool = False

    def resolved_epsilon(self, bc: BoundaryConfig) -> float:
        if self.epsilon is not None:
            return float(self.epsilon)
        return 1e-6 * bc.min_length()

    def cutoff_for_axis(self, bc: BoundaryConfig, axis: int) -> int:
        if isinstance(self.cutoffs, (tuple, list)):
            return int(self.cutoffs[axis])
        return int(self.cutoffs)

    def with_(self, **kw) -> "CommutatorOptions":
        return replace(self, **kw)


@dataclass(frozen=True)
class DetectorSpec:
    """One two-level detector: where it sits, how it is smeared on and off.

    sigma == 0 encodes a pointlike detector; t_on == t_off encodes an
    instantaneous (delta) switching at that instant.
    """

    center: tuple[float, ...]
    sigma: float = 0.0
    t_on: float = 0.0
    t_off: float = 0.0
    omega: float = 0.0
    coupling: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(float(v) for v in self.center))
        if self.t_off < self.t_on:
            raise ValidationError([("BadSwitching", "t_on",
                                    "switching window needs t_on <= t_off "
                                    "(equality encodes delta switching)")])
        if self.sigma < 0:
            raise ValidationError([("BadSmearing", "sigma", "sigma must be >= 0")])

    @property
    def n(self) -> int:
        return len(self.center)

    def is_delta_switched(self) -> bool:
        return self.t_on == self.t_off

    def is_pointlike(self) -> bool:
        return self.sigma == 0.0


def _validate_bc(bc: BoundaryConfig, violations: list) -> None:
    open_count = 0
    for i, axis in enumerate(bc.axes):
        if not isinstance(axis.kind, AxisKind):
            violations.append(("BadAxisKind", f"axes[{i}].kind", f"unknown kind {axis.kind!r}"))
            continue
        if axis.kind is AxisKind.OPEN:
            open_count += 1
            if axis.length is not None:
                violations.append(("OpenAxisHasLength", f"axes[{i}].length",
                                   "open axes carry no length"))
        else:
            if axis.length is None:
                violations.append(("NonPositiveLength", f"axes[{i}].length",
                                   "discrete axes require a length"))
            elif not (axis.length > 0 and math.isfinite(axis.length)):
                violations.append(("NonPositiveLength", f"axes[{i}].length",
                                   f"length must be a positive real, got {axis.length}"))
    if open_count > 1:
        violations.append(("MultipleOpenAxes", "axes",
                           f"at most one open axis allowed, found {open_count}"))
    if bc.n == 0:
        violations.append(("EmptyAxes", "axes", "at least one spatial axis required"))


def _validate_opts(bc: BoundaryConfig, opts: CommutatorOptions, violations: list) -> None:
    eps = opts.epsilon
    if eps is not None and not (eps > 0 and math.isfinite(eps)):
        violations.append(("BadEpsilon", "options.epsilon", f"epsilon must be > 0, got {eps}"))
    if not (opts.pv_epsilon > 0 and math.isfinite(opts.pv_epsilon)):
        violations.append(("BadEpsilon", "options.pv_epsilon",
                           f"pv_epsilon must be > 0, got {opts.pv_epsilon}"))
    if not (opts.open_cutoff > 0 and math.isfinite(opts.open_cutoff)):
        violations.append(("BadCutoff", "options.open_cutoff",
                           f"open-axis cutoff must be > 0, got {opts.open_cutoff}"))
    cut = opts.cutoffs
    if isinstance(cut, (tuple, list)):
        if len(cut) != bc.n:
            violations.append(("BadCutoff", "options.cutoffs",
                               f"need one cutoff per axis ({bc.n}), got {len(cut)}"))
        else:
            for i, c in enumerate(cut):
                if bc.axes[i].kind is AxisKind.OPEN:
                    continue  # open axes truncate via open_cutoff instead
                if not (isinstance(c, int) and c >= 1):
                    violations.append(("BadCutoff", f"options.cutoffs[{i}]",
                                       f"cutoff must be an integer >= 1, got {c!r}"))
    elif not (isinstance(cut, int) and cut >= 1):
        violations.append(("BadCutoff", "options.cutoffs",
                           f"cutoff must be an integer >= 1, got {cut!r}"))
    if not isinstance(opts.summation, Summation):
        violations.append(("BadSummation", "options.summation",
                           f"unknown summation policy {opts.summation!r}"))


def validate_config(bc: BoundaryConfig, opts: Optional[CommutatorOptions] = None):
    """Check every invariant; raise ValidationError listing all violations.

    Returns the (bc, opts) pair unchanged on success so callers can write
    ``bc, opts = validate_config(bc, opts)``.
    """
    opts = opts if opts is not None else CommutatorOptions()
    violations: list = []
    _validate_bc(bc, violations)
    _validate_opts(bc, opts, violations)
    if violations:
        raise ValidationError(violations)
    return bc, opts
