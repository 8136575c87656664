"""Time the numba kernels against the numpy fallback.

    python benchmarks/bench_backends.py [--sizes 10 20 30] [--reps 5]

Prints per-call wall time for the assignment kernel, POSA and OS01PT on
random complete instances, and checks that both backends agree.
"""
import argparse
import time

import numpy as np

from pbsched._backend import get_kernels
from pbsched.instance import generate_uniform
from pbsched.matching import regularize, saturate_loads


def best_of(fn, reps):
    fn()  # warm-up (jit compile / cache load)
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 20, 30])
    ap.add_argument("--reps", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    nb, npk = get_kernels("numba"), get_kernels("numpy")
    print(f"{'n':>4} {'kernel':<10} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}  same")
    for n in args.sizes:
        inst = generate_uniform(n, n, 120, 1.0, 0, [args.seed, n])
        sat = saturate_loads(inst)
        reg = regularize(inst)
        mask = np.ones((n, n), np.bool_)
        cases = {
            "assign": lambda k: k.lexmax_assignment(sat.real, mask),
            "posa": lambda k: k.posa_rounds(sat.real, sat.slack, True),
            "os01pt": lambda k: k.os01pt_rounds(reg.real, reg.mult, reg.target),
        }
        for name, call in cases.items():
            t_nb, out_nb = best_of(lambda: call(nb), args.reps)
            t_np, out_np = best_of(lambda: call(npk), max(1, args.reps // 2))
            same = all(np.array_equal(a, b) for a, b in zip(out_nb, out_np))
            print(f"{n:>4} {name:<10} {t_nb * 1e3:>10.3f} {t_np * 1e3:>10.3f} {t_np / t_nb:>8.1f}  {same}")


if __name__ == "__main__":
    main()
