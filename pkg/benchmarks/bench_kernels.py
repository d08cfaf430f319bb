#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the three hot paths on representative workloads:

  * gamma_upper_array  -- incomplete-gamma kernel over a series' worth of
                          arguments (the dominant cost of one twist),
  * lambda_series      -- full completed-twist accumulation,
  * curve_ap_batch     -- point counting for weight-2 coefficient tables.

Run:  python3 benchmarks/bench_kernels.py [--repeat N]
The numba path is also what ADDTWIST_BACKEND=auto selects when available;
set ADDTWIST_BACKEND=numpy to force the fallback in the package itself.
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from addtwist import _kernels_numpy as numpy_kernels

try:
    from addtwist import _kernels_numba as numba_kernels
except ImportError:
    numba_kernels = None

from addtwist.arith import primes_up_to


def _time(fn, repeat: int) -> float:
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def make_workloads():
    rng = np.random.default_rng(20240917)
    m = 20_000
    big_c = 199.0
    u = (2 * np.pi / big_c) * np.arange(1.0, m + 1.0)
    coeffs = rng.standard_normal(m) * np.arange(1.0, m + 1.0) ** 5.5
    ph1 = np.exp(2j * np.pi * rng.random(m))
    ph2 = np.exp(2j * np.pi * rng.random(m))
    primes = primes_up_to(30_000)
    return {
        "gamma_upper_array (s=6, 20k args)": lambda k: k.gamma_upper_array(6.0, u),
        "lambda_series (20k terms)": lambda k: k.lambda_series(
            coeffs, ph1, ph2, u, 6.0, 12.0, 1.0
        ),
        "curve_ap_batch (p < 30000)": lambda k: k.curve_ap_batch(
            primes, 0, -1, 1, -10, -20
        ),
    }


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    workloads = make_workloads()
    backends = [("numpy", numpy_kernels)]
    if numba_kernels is not None:
        # trigger compilation outside the timed region
        for fn in workloads.values():
            fn(numba_kernels)
        backends.append(("numba", numba_kernels))
    else:
        print("numba unavailable; benchmarking the numpy path only")

    width = max(len(name) for name in workloads)
    print(f"{'workload':<{width}}  " + "".join(f"{n:>12}" for n, _ in backends)
          + ("     speedup" if len(backends) == 2 else ""))
    for name, fn in workloads.items():
        times = [_time(lambda k=kern: fn(k), args.repeat) for _, kern in backends]
        row = f"{name:<{width}}  " + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) == 2 and times[1] > 0:
            row += f"  {times[0] / times[1]:>9.1f}x"
        print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
