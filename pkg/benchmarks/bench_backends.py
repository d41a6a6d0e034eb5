#!/usr/bin/env python3
"""Times the numba kernels against their pure-numpy twins.

Run with no EXPSIEVE_BACKEND set (or =numba) so both implementations are
available; each kernel is warmed once (JIT compile) and then timed over
`--repeat` runs, keeping the best.  Results print as a table and can be
appended to a CSV with --csv.

    python benchmarks/bench_backends.py --scale 1000000 --repeat 5
"""

import argparse
import csv
import math
import sys
import time

import numpy as np

from expsieve import kernels
from expsieve.arith import small_primes


def _timeit(fn, args, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def build_cases(scale):
    rng = np.random.default_rng(0)
    x = scale
    y = max(10, scale // 10 ** 4)
    pre = np.zeros(x + 2 * y + 1)
    pim = np.zeros(x + 2 * y + 1)
    pre[y + 1:y + x + 1] = rng.normal(size=x)
    pim[y + 1:y + x + 1] = rng.normal(size=x)
    th = rng.uniform(0, 2 * np.pi, size=x + y)
    vals = rng.normal(size=x) ** 2
    seg_lo = 10 ** 7 + 1
    seg_n = min(1 << 20, scale)
    primes = small_primes(math.isqrt(seg_lo + seg_n))
    return {
        "mult_segment": (seg_lo, seg_n, primes),
        "window_l2": (pre, pim, x, y, 1 << 16),
        "window_weighted": (pre, pim, np.cos(th), np.sin(th), x, y, 1 << 16),
        "prefix_max": (pre[y + 1:y + x + 1], pim[y + 1:y + x + 1]),
        "residue_sums": (vals, 101),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--scale", type=int, default=10 ** 6)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--csv", help="append results to this CSV")
    args = ap.parse_args(argv)

    impls = kernels.IMPLEMENTATIONS
    if "numba" not in impls:
        print("numba backend unavailable; nothing to compare", file=sys.stderr)
        return 1
    cases = build_cases(args.scale)
    rows = []
    print(f"{'kernel':<18}{'numpy (s)':>12}{'numba (s)':>12}{'speedup':>9}")
    for name, case in cases.items():
        impls["numba"][name](*case)  # JIT warmup
        t_np = _timeit(impls["numpy"][name], case, args.repeat)
        t_nb = _timeit(impls["numba"][name], case, args.repeat)
        print(f"{name:<18}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>9.2f}x")
        rows.append((name, args.scale, t_np, t_nb, t_np / t_nb))
    if args.csv:
        with open(args.csv, "a", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["kernel", "scale", "numpy_s", "numba_s", "speedup"])
            w.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
