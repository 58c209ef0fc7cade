"""Mode-sum kernel benchmark: numba backend vs pure-numpy fallback.

Times the hot commutator kernel on the production-sized workloads (the
2-torus and 3-torus preset geometries) and cross-checks that the two
backends agree to the last few ulps.

    python benchmarks/bench_modesum.py [--points N]

The active default backend follows CAUSAL_MODES_BACKEND; this script
times both explicitly regardless.
"""

import argparse
import time

import numpy as np

from causalmodes import CommutatorOptions, SpacetimeEvent, osc_commutator_modesum, torus
from causalmodes.spectrum import ModeArrays


def bench(bc, opts, dx, dt_grid, backend):
    arrays = ModeArrays(bc, opts)
    origin = SpacetimeEvent(0.0, (0.0,) * bc.n)
    # warm-up (JIT compile / cache load)
    osc_commutator_modesum(bc, SpacetimeEvent(float(dt_grid[0]), dx), origin,
                           opts, backend=backend, arrays=arrays)
    t0 = time.perf_counter()
    vals = [osc_commutator_modesum(bc, SpacetimeEvent(float(dt), dx), origin,
                                   opts, backend=backend, arrays=arrays)
            for dt in dt_grid]
    return time.perf_counter() - t0, np.array(vals), len(arrays)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=64, help="grid points per case")
    args = parser.parse_args()

    cases = [
        ("2-torus 100^2", torus(2, 10.0), CommutatorOptions(cutoffs=100), (5.0, 2.0),
         np.linspace(0.1, 5.0, args.points)),
        ("3-torus 30^3", torus(3, 1.0), CommutatorOptions(cutoffs=30), (0.5, 0.0, 0.0),
         np.linspace(0.05, 1.2, args.points)),
    ]
    print(f"{'case':<16} {'modes':>8} {'numba':>10} {'numpy':>10} {'speedup':>8} {'max|diff|':>10}")
    for name, bc, opts, dx, grid in cases:
        t_nb, v_nb, modes = bench(bc, opts, dx, grid, "numba")
        t_np, v_np, _ = bench(bc, opts, dx, grid, "numpy")
        diff = float(np.max(np.abs(v_nb - v_np)))
        print(f"{name:<16} {modes:>8} {t_nb:>9.3f}s {t_np:>9.3f}s {t_np / t_nb:>7.2f}x {diff:>10.2e}")
        assert diff < 1e-12, "backends disagree beyond trig rounding"


if __name__ == "__main__":
    main()
