"""Compare the numba and numpy trajectory kernels.

    python benchmarks/bench_mc.py [--samples N] [--cycles N] [--repeat N]

The first numba call includes compilation (cached on disk afterwards), so it
is timed separately from the steady-state runs.
"""

import argparse
import time

import numpy as np

from tsmengine.engine import CycleSpec
from tsmengine.mc import NUMBA_AVAILABLE, SimConfig, run_monitored


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=20000)
    ap.add_argument("--cycles", type=int, default=20)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    spec = CycleSpec.build(theta=np.pi / 4, measurement="proj", phi=np.pi / 4)
    cfg = SimConfig(spec, n_cycles=args.cycles, n_samples=args.samples, seed=1)
    print(f"{args.samples} trajectories x {args.cycles} cycles, best of {args.repeat}")

    t_np, r_np = best_of(lambda: run_monitored(cfg, backend="numpy"), args.repeat)
    print(f"numpy   {t_np * 1e3:9.2f} ms")
    if not NUMBA_AVAILABLE:
        print("numba   not installed")
        return
    t0 = time.perf_counter()
    run_monitored(cfg, backend="numba")
    print(f"numba   {(time.perf_counter() - t0) * 1e3:9.2f} ms  (first call)")
    t_nb, r_nb = best_of(lambda: run_monitored(cfg, backend="numba"), args.repeat)
    print(f"numba   {t_nb * 1e3:9.2f} ms  speedup x{t_np / t_nb:.1f}")
    same = np.array_equal(r_np.w_samples, r_nb.w_samples)
    print(f"outputs bit-identical: {same}")


if __name__ == "__main__":
    main()
