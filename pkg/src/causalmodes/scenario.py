"""Declarative scenario runner.

A scenario is a JSON object naming a boundary configuration, numerical
options, a detector pair, one sweep variable with its grid, and the
output quantities to tabulate.  ``run_scenarios`` evaluates every grid
point, writes one CSV per requested output (RFC-4180 quoting, '.'
decimals, UTF-8, LF) plus a JSON sidecar with every default
materialized; re-running the sidecar reproduces the CSVs byte for byte.

Grid points are independent pure evaluations, so a thread pool may fan
them out; the reduction contracts downstream guarantee the worker count
never changes a digit.
"""

from __future__ import annotations

import csv
import json
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict
from typing import Optional

import numpy as np

from .commutator import full_commutator, zero_mode_commutator
from .detector import QubitState, signal_block, signal_magnitude
from .errors import ComputeError, ConfigParseError, ValidationError
from .estimator import estimator_complex
from .geometry import (
    AxisKind,
    AxisSpec,
    BoundaryConfig,
    CommutatorOptions,
    DetectorSpec,
    SpacetimeEvent,
    Summation,
    validate_config,
)

SWEEP_VARIABLES = ("dt", "L", "D", "delta_ratio", "pv_epsilon", "cutoff")
QUANTITIES = ("commutator_full", "commutator_osc", "commutator_zero_mode",
              "estimator", "signal_magnitude", "reference_linear")

_OPTION_DEFAULTS = {
    "epsilon": None,
    "cutoffs": 100,
    "include_zero_mode": True,
    "pv_epsilon": 1e-3,
    "open_cutoff": 50.0,
    "summation": "pairwise",
    "lanczos_sigma": False,
}

_DETECTOR_DEFAULTS = {
    "center": None,
    "sigma": 0.0,
    "t_on": 0.0,
    "t_off": 0.0,
    "omega": 0.0,
    "coupling": 1.0,
    "state": None,
}


def _fail(field: str, msg: str):
    raise ValidationError([("BadScenario", field, msg)])


def resolve_scenario(raw: dict, index: int = 0) -> dict:
    """Materialize every default and validate; returns a plain dict that
    round-trips through JSON and re-resolves to itself."""
    if not isinstance(raw, dict):
        _fail(f"scenarios[{index}]", "scenario must be an object")
    out: dict = {}
    out["name"] = str(raw.get("name", f"scenario{index}"))

    bc_raw = raw.get("bc")
    if not isinstance(bc_raw, dict) or "axes" not in bc_raw:
        _fail("bc", "missing bc.axes")
    axes = []
    for i, ax in enumerate(bc_raw["axes"]):
        kind = ax.get("kind")
        try:
            kind = AxisKind(kind)
        except ValueError:
            _fail(f"bc.axes[{i}].kind", f"unknown axis kind {kind!r}")
        length = ax.get("length")
        if kind is not AxisKind.OPEN:
            if length is None:
                _fail(f"axes[{i}].length", "discrete axes require a positive length")
            length = float(length)
        axes.append({"kind": kind.value, "length": length})
    out["bc"] = {"axes": axes}

    opts = dict(_OPTION_DEFAULTS)
    for key, val in (raw.get("options") or {}).items():
        if key not in _OPTION_DEFAULTS:
            _fail(f"options.{key}", "unknown option")
        opts[key] = val
    if isinstance(opts["cutoffs"], (list, tuple)):
        opts["cutoffs"] = [int(c) for c in opts["cutoffs"]]
    out["options"] = opts

    dets = raw.get("detectors") or {}
    out["detectors"] = {}
    for label in ("a", "b"):
        d = dict(_DETECTOR_DEFAULTS)
        for key, val in (dets.get(label) or {}).items():
            if key not in _DETECTOR_DEFAULTS:
                _fail(f"detectors.{label}.{key}", "unknown detector field")
            d[key] = val
        if d["center"] is None:
            d["center"] = [0.0] * len(axes)
        d["center"] = [float(v) for v in d["center"]]
        out["detectors"][label] = d

    sweep = raw.get("sweep")
    if not isinstance(sweep, dict):
        _fail("sweep", "missing sweep")
    var = sweep.get("variable")
    if var not in SWEEP_VARIABLES:
        _fail("sweep.variable", f"must be one of {SWEEP_VARIABLES}, got {var!r}")
    grid = [float(v) for v in sweep.get("grid") or []]
    if not grid:
        _fail("sweep.grid", "grid must be nonempty")
    if not all(b > a for a, b in zip(grid, grid[1:])) and \
       not all(b < a for a, b in zip(grid, grid[1:])):
        _fail("sweep.grid", "grid must be strictly monotone")
    out["sweep"] = {"variable": var, "grid": grid}

    out["fixed"] = {k: float(v) for k, v in (raw.get("fixed") or {}).items()}
    out["quadrature_order"] = int(raw.get("quadrature_order", 64))

    outputs = raw.get("outputs")
    if not outputs:
        _fail("outputs", "at least one output required")
    out["outputs"] = []
    seen = set()
    for i, o in enumerate(outputs):
        q = o.get("quantity")
        if q not in QUANTITIES:
            _fail(f"outputs[{i}].quantity", f"must be one of {QUANTITIES}, got {q!r}")
        col = str(o.get("column", q))
        if col in seen:
            _fail(f"outputs[{i}].column", f"duplicate column name {col!r}")
        seen.add(col)
        if q == "signal_magnitude":
            for label in ("a", "b"):
                if out["detectors"][label]["state"] is None:
                    _fail(f"detectors.{label}.state",
                          "signal_magnitude requires qubit states on both detectors")
        out["outputs"].append({"column": col, "quantity": q})
    return out


def _build_bc(resolved: dict) -> BoundaryConfig:
    axes = tuple(
        AxisSpec(AxisKind(ax["kind"]), ax["length"]) for ax in resolved["bc"]["axes"])
    return BoundaryConfig(axes)


def _build_opts(resolved: dict) -> CommutatorOptions:
    o = resolved["options"]
    cut = o["cutoffs"]
    return CommutatorOptions(
        epsilon=o["epsilon"],
        cutoffs=tuple(cut) if isinstance(cut, list) else int(cut),
        include_zero_mode=bool(o["include_zero_mode"]),
        pv_epsilon=float(o["pv_epsilon"]),
        open_cutoff=float(o["open_cutoff"]),
        summation=Summation(o["summation"]),
        lanczos_sigma=bool(o["lanczos_sigma"]),
    )


def _build_detector(d: dict) -> DetectorSpec:
    return DetectorSpec(center=tuple(d["center"]), sigma=float(d["sigma"]),
                        t_on=float(d["t_on"]), t_off=float(d["t_off"]),
                        omega=float(d["omega"]), coupling=float(d["coupling"]))


def _build_state(d: dict) -> QubitState:
    s = d["state"]
    return QubitState(alpha=float(s["alpha"]),
                      beta=complex(float(s.get("beta_re", 0.0)), float(s.get("beta_im", 0.0))))


def _point_config(resolved: dict, value: float):
    """Apply one sweep value; returns (bc, opts, det_a, det_b, dt_eff)."""
    var = resolved["sweep"]["variable"]
    bc = _build_bc(resolved)
    opts = _build_opts(resolved)
    da = dict(resolved["detectors"]["a"])
    db = dict(resolved["detectors"]["b"])
    fixed = resolved["fixed"]
    dt_eff = fixed.get("dt", db["t_on"] - da["t_on"])

    if var == "dt":
        dur = db["t_off"] - db["t_on"]
        db["t_on"] = value
        db["t_off"] = value + dur
        dt_eff = value
    elif var == "L":
        axes = tuple(
            AxisSpec(a.kind, value if a.is_discrete() else None) for a in bc.axes)
        bc = BoundaryConfig(axes)
    elif var == "D":
        # surface-to-surface distance along the first axis
        db["center"] = list(db["center"])
        db["center"][0] = da["center"][0] + da["sigma"] / 2.0 + value + db["sigma"] / 2.0
    elif var == "delta_ratio":
        gap = fixed.get("gap", 1.0)
        delta = value * gap
        da["t_on"], da["t_off"], da["sigma"] = 0.0, delta, delta
        db["t_on"], db["t_off"], db["sigma"] = delta + gap, 2.0 * delta + gap, delta
    elif var == "pv_epsilon":
        opts = opts.with_(pv_epsilon=float(value))
    elif var == "cutoff":
        opts = opts.with_(cutoffs=int(value))
    return bc, opts, _build_detector(da), _build_detector(db), dt_eff


def _evaluate_point(resolved: dict, value: float):
    bc, opts, det_a, det_b, dt_eff = _point_config(resolved, value)
    validate_config(bc, opts)
    order = resolved["quadrature_order"]
    row = {}
    needed = {o["quantity"] for o in resolved["outputs"]}

    if needed & {"commutator_full", "commutator_osc", "commutator_zero_mode"}:
        ev_b = SpacetimeEvent(dt_eff, det_b.center)
        ev_a = SpacetimeEvent(0.0, det_a.center)
        res = full_commutator(bc, ev_b, ev_a, opts)
        row["commutator_full"] = (res.value, res.modes_summed, res.error_estimate)
        row["commutator_osc"] = (res.osc, res.modes_summed, res.error_estimate)
        row["commutator_zero_mode"] = (res.zero_mode, 0, None)
    if "estimator" in needed:
        val, err = estimator_complex(bc, det_a, det_b, opts, order=order)
        row["estimator"] = (val, 0, err)
    if "signal_magnitude" in needed:
        block = signal_block(det_a, _build_state(resolved["detectors"]["a"]),
                             det_b, _build_state(resolved["detectors"]["b"]),
                             bc, opts, order=order)
        row["signal_magnitude"] = (complex(signal_magnitude(block)), 0, block.error_estimate)
    if "reference_linear" in needed:
        # |dt| / spatial volume: the analytic zero-mode-exclusion magnitude
        row["reference_linear"] = (complex(abs(dt_eff) / bc.volume()), 0, None)
    return row


def run_scenario(resolved: dict, threads: int = 1) -> dict:
    """Evaluate all grid points; returns column -> list of row tuples."""
    grid = resolved["sweep"]["grid"]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda v: _evaluate_point(resolved, v), grid))
    else:
        rows = [_evaluate_point(resolved, v) for v in grid]
    tables = {}
    for out in resolved["outputs"]:
        col, q = out["column"], out["quantity"]
        tables[col] = [(grid[i],) + rows[i][q] for i in range(len(grid))]
    return tables


def _fmt(x) -> str:
    if x is None:
        return ""
    return repr(float(x))


def _atomic_write(path: str, text: str) -> None:
    d = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path: str, variable: str, rows) -> None:
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([variable, "re", "im", "abs", "modes_summed", "error_estimate"])
    for value, quantity, modes, err in rows:
        writer.writerow([
            _fmt(value), _fmt(quantity.real), _fmt(quantity.imag), _fmt(abs(quantity)),
            str(int(modes)), _fmt(err),
        ])
    _atomic_write(path, buf.getvalue())


def load_config(path: str) -> list[dict]:
    """Parse a config file into a list of raw scenario dicts."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigParseError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigParseError(f"config file {path} is not valid JSON: {exc}") from exc
    if isinstance(data, dict) and "scenarios" in data:
        scenarios = data["scenarios"]
    elif isinstance(data, dict):
        scenarios = [data]
    else:
        raise ConfigParseError("config must be a scenario object or {\"scenarios\": [...]}")
    if not isinstance(scenarios, list) or not scenarios:
        raise ConfigParseError("scenarios must be a nonempty list")
    return scenarios


def run_scenarios(raw_scenarios: list[dict], out_dir: str, *, threads: int = 1,
                  sidecar_name: str = "resolved", overrides: Optional[dict] = None) -> list[str]:
    """Resolve, evaluate and write every scenario; returns written paths."""
    resolved = []
    for i, raw in enumerate(raw_scenarios):
        r = resolve_scenario(raw, i)
        if overrides:
            o = dict(r["options"])
            o.update(overrides)
            r["options"] = o
            r = resolve_scenario(r, i)
        resolved.append(r)

    os.makedirs(out_dir, exist_ok=True)
    written = []
    for r in resolved:
        tables = run_scenario(r, threads=threads)
        for out in r["outputs"]:
            col = out["column"]
            path = os.path.join(out_dir, f"{r['name']}__{col}.csv")
            write_csv(path, r["sweep"]["variable"], tables[col])
            written.append(path)
    sidecar = os.path.join(out_dir, f"{sidecar_name}__resolved.json")
    _atomic_write(sidecar, json.dumps({"scenarios": resolved}, indent=2, sort_keys=True) + "\n")
    written.append(sidecar)
    return written
