"""Command-line scenario runner.

Subcommands:
  run <config.json>    evaluate the scenarios in a config file
  figure <id>          run a built-in figure preset
  list-figures         show the preset table
  selftest             quick invariant checks (exit 3 on failure)

Exit codes: 0 success, 2 configuration error, 3 compute error.  The
default output directory comes from $CAUSAL_MODES_OUT, falling back to
./out.  --threads only changes evaluation speed, never any digit of the
output.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from .errors import CausalModesError, ComputeError, ConfigError
from .presets import PRESET_IDS, PRESET_TABLE, preset_scenarios
from .scenario import load_config, run_scenarios

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_COMPUTE = 3


def _default_out() -> str:
    return os.environ.get("CAUSAL_MODES_OUT", "out")


def _bool_flag(value: str) -> bool:
    low = value.strip().lower()
    if low in ("true", "1", "yes"):
        return True
    if low in ("false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {value!r}")


def _collect_overrides(args) -> dict:
    overrides = {}
    if args.epsilon is not None:
        overrides["epsilon"] = args.epsilon
    if args.cutoff is not None:
        overrides["cutoffs"] = args.cutoff
    if args.include_zero_mode is not None:
        overrides["include_zero_mode"] = args.include_zero_mode
    return overrides


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default=None, help="output directory (default: $CAUSAL_MODES_OUT or ./out)")
    p.add_argument("--threads", type=int, default=1,
                   help="worker threads; affects speed only, never results")
    p.add_argument("--epsilon", type=float, default=None, help="override regulator epsilon")
    p.add_argument("--cutoff", type=int, default=None, help="override per-axis mode cutoff")
    p.add_argument("--include-zero-mode", type=_bool_flag, default=None,
                   metavar="{true|false}", help="override the zero-mode flag")


def cmd_run(args) -> int:
    scenarios = load_config(args.config)
    stem = os.path.splitext(os.path.basename(args.config))[0]
    # sidecars re-run under their original preset name
    if stem.endswith("__resolved"):
        stem = stem[: -len("__resolved")]
    written = run_scenarios(scenarios, args.out or _default_out(),
                            threads=args.threads, sidecar_name=stem,
                            overrides=_collect_overrides(args))
    for path in written:
        print(path)
    return EXIT_OK


def cmd_figure(args) -> int:
    scenarios = preset_scenarios(args.id)
    written = run_scenarios(scenarios, args.out or _default_out(),
                            threads=args.threads, sidecar_name=args.id,
                            overrides=_collect_overrides(args))
    for path in written:
        print(path)
    return EXIT_OK


def cmd_list_figures(_args) -> int:
    width = max(len(pid) for pid, _ in PRESET_TABLE)
    for pid, desc in PRESET_TABLE:
        print(f"{pid:<{width}}  {desc}")
    return EXIT_OK


def cmd_selftest(_args) -> int:
    """Fast invariant sweep; a cut-down version of the pytest suite."""
    import numpy as np

    from .commutator import full_commutator, zero_mode_commutator
    from .geometry import CommutatorOptions, DetectorSpec, SpacetimeEvent, interval, torus
    from .geometry import AxisKind
    from .estimator import estimator_E

    failures = 0

    def check(name: str, ok: bool) -> None:
        nonlocal failures
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        failures += 0 if ok else 1

    t0 = time.time()
    bc = interval(AxisKind.PERIODIC, 10.0)
    opts = CommutatorOptions(epsilon=1e-5)
    a = SpacetimeEvent(2.0, (5.0,))
    b = SpacetimeEvent(0.0, (0.0,))
    r = full_commutator(bc, a, b, opts)
    check("1D periodic spacelike microcausality", abs(r.value) < 1e-4)
    check("zero-mode formula", zero_mode_commutator(torus(3, 2.0), 4.0) == -0.5j)
    r_ab = full_commutator(bc, a, b, opts)
    r_ba = full_commutator(bc, b, a, opts)
    check("antisymmetry", abs(r_ab.value + r_ba.value) < 1e-12)

    bc2 = torus(2, 10.0)
    o2 = CommutatorOptions(cutoffs=40)
    a2 = SpacetimeEvent(1.5, (5.0, 2.0))
    b2 = SpacetimeEvent(0.0, (0.0, 0.0))
    m_ab = full_commutator(bc2, a2, b2, o2)
    m_ba = full_commutator(bc2, b2, a2, o2)
    check("mode-sum antisymmetry (bit-exact)", m_ab.value == -m_ba.value)
    check("mode-sum purely imaginary", m_ab.value.real == 0.0)
    check("mode count (2N+1)^n - 1", m_ab.modes_summed == 81 * 81 - 1)

    det_a = DetectorSpec(center=(0.0,), t_on=0.0, t_off=0.0)
    det_b = DetectorSpec(center=(5.0,), t_on=2.0, t_off=2.0)
    e_on = estimator_E(bc, det_a, det_b, opts)
    e_off = estimator_E(bc, det_a, det_b, opts.with_(include_zero_mode=False))
    check("estimator spacelike suppression", e_on < 1e-4 < abs(e_off - 0.2) + 0.1)
    check("estimator zero-mode exclusion value", abs(e_off - 0.2) < 1e-4)
    print(f"selftest finished in {time.time() - t0:.2f}s")
    return EXIT_OK if failures == 0 else EXIT_COMPUTE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="causal-modes",
        description="field commutator and detector-signalling scenario runner")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run scenarios from a config file")
    p_run.add_argument("config", help="path to a JSON scenario file")
    _add_common(p_run)
    p_run.set_defaults(fn=cmd_run)

    p_fig = sub.add_parser("figure", help="run a figure preset")
    p_fig.add_argument("id", choices=PRESET_IDS, help="preset id")
    _add_common(p_fig)
    p_fig.set_defaults(fn=cmd_figure)

    p_list = sub.add_parser("list-figures", help="list figure presets")
    p_list.set_defaults(fn=cmd_list_figures)

    p_self = sub.add_parser("selftest", help="quick invariant checks")
    p_self.set_defaults(fn=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CausalModesError as exc:
        print(f"compute error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
