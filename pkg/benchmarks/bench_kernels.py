"""Time the compiled Jacobi kernel against the numpy fallback.

    python benchmarks/bench_kernels.py [--reps 3]
"""

import argparse
import time

import numpy as np

from vnskew import _kernels_py

try:
    from vnskew import _kernels
except ImportError:
    _kernels = None

CASES = [((2, 2), 50_000), ((4, 8), 20_000), ((8, 16), 5_000), ((16, 32), 1_000)]


def stack(m, n, count, seed=0):
    rng = np.random.default_rng(seed)
    x = (rng.standard_normal((count, m, n)) + 1j * rng.standard_normal((count, m, n))) * np.sqrt(0.5)
    return np.ascontiguousarray(x @ np.conj(np.swapaxes(x, 1, 2)))


def best_of(fn, w, reps):
    times = []
    for _ in range(reps):
        a = w.copy()
        t = time.perf_counter()
        vals, _ = fn(a)
        times.append(time.perf_counter() - t)
    return min(times), vals


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--reps", type=int, default=3)
    args = ap.parse_args()
    print(f"{'m x n':>8} {'count':>7} {'numpy s':>9} {'cython s':>9} {'speedup':>8} {'max |diff|':>11}")
    for (m, n), count in CASES:
        w = stack(m, n, count)
        tp, vp = best_of(_kernels_py.jacobi_eigvals_batch, w, args.reps)
        if _kernels is None:
            print(f"{m:>3} x {n:<3} {count:>7} {tp:>9.3f} {'n/a':>9}")
            continue
        tc, vc = best_of(_kernels.jacobi_eigvals_batch, w, args.reps)
        diff = np.max(np.abs(np.sort(vp, 1) - np.sort(vc, 1)))
        print(f"{m:>3} x {n:<3} {count:>7} {tp:>9.3f} {tc:>9.3f} {tp / tc:>7.1f}x {diff:>11.2e}")


if __name__ == "__main__":
    main()
