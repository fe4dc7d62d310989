"""Timing comparison of the numba kernels against the pure-numpy fallbacks.

Usage: python benchmarks/bench_kernels.py [--repeat R]

Run once normally and once with MAHLER_NO_NUMBA=1 to sanity-check that the
dispatcher actually switches; within one process this script times both
implementations directly.
"""

import argparse
import time

import numpy as np

from mahler import kernels, rudin_shapiro
from mahler.kernels import _aberth_numpy, _horner_numpy, _power_means_numpy
from mahler.measures import _initial_roots


def timeit(fn, repeat):
    fn()  # warm up (jit compilation, caches)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    print(f"numba enabled: {kernels.NUMBA_ENABLED}")
    rows = []

    f = rudin_shapiro(12).p
    coeffs = np.asarray(f.coeffs, float)
    thetas = np.linspace(0.0, 2 * np.pi, 4096, endpoint=False)
    rows.append(("horner deg=4095 m=4096",
                 timeit(lambda: kernels.horner_eval(coeffs, thetas), args.repeat),
                 timeit(lambda: _horner_numpy(coeffs, thetas), args.repeat)))

    g = rudin_shapiro(9).p
    gc = np.asarray(g.coeffs, float)
    start = _initial_roots(g.degree)
    rows.append(("aberth deg=511",
                 timeit(lambda: kernels.aberth_iterate(gc, start.copy(), 1e-12, 500),
                        args.repeat),
                 timeit(lambda: _aberth_numpy(gc, start.copy(), 1e-12, 500),
                        args.repeat)))

    vals = np.abs(np.sin(np.linspace(0, 37.0, 1 << 20)))
    rows.append(("power_means m=2^20 k=400",
                 timeit(lambda: kernels.power_means(vals, 400), args.repeat),
                 timeit(lambda: _power_means_numpy(vals, 400), args.repeat)))

    print(f"{'kernel':<28} {'dispatch':>10} {'numpy':>10} {'speedup':>8}")
    for name, td, tn in rows:
        print(f"{name:<28} {td:>9.4f}s {tn:>9.4f}s {tn / td:>7.2f}x")


if __name__ == "__main__":
    main()
