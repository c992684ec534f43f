#!/usr/bin/env python3
"""Compare the numba-jitted kernels against their pure-numpy fallbacks.

Usage:
    python benchmarks/bench_kernels.py [--size-log2 20] [--repeat 3]

The same comparison can be forced end to end on the numpy path by running
any workload with HECKE_PURE_NUMPY=1.
"""

import argparse
import subprocess
import sys
import time

import numpy as np

from heckedens import kernels
from heckedens.series import _root_power_table

P, G = 2013265921, 31


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_ntt(n, repeat):
    rng = np.random.default_rng(1)
    a = rng.integers(0, P, n).astype(np.int64)
    wtab = _root_power_table(P, G, n)
    rows = []
    if kernels.HAVE_NUMBA:
        kernels.ntt_inplace_numba(a.copy(), wtab, P)  # compile outside the timer
        rows.append(("ntt", "numba", best_of(lambda: kernels.ntt_inplace_numba(a.copy(), wtab, P), repeat)))
    rows.append(("ntt", "numpy", best_of(lambda: kernels.ntt_inplace_numpy(a.copy(), wtab, P), repeat)))
    return rows


def bench_sigma(X, repeat):
    rows = []
    if kernels.HAVE_NUMBA:
        kernels.sigma_pow_sieve_numba(100, 5, 2187)
        rows.append(("sigma sieve", "numba", best_of(lambda: kernels.sigma_pow_sieve_numba(X, 5, 2187), repeat)))
    rows.append(("sigma sieve", "numpy", best_of(lambda: kernels.sigma_pow_sieve_numpy(X, 5, 2187), repeat)))
    return rows


def bench_sparse_square(X, repeat):
    k = int((2 * X) ** 0.5)
    ks = np.arange(k, dtype=np.int64)
    exps = ks * (ks + 1) // 2
    exps = exps[exps <= X]
    coefs = (2 * np.arange(len(exps), dtype=np.int64) + 1) * np.where(np.arange(len(exps)) % 2 == 0, 1, -1)
    rows = []
    if kernels.HAVE_NUMBA:
        kernels.sparse_square_numba(exps[:10], coefs[:10], 40, 97)
        rows.append(("sparse square", "numba", best_of(lambda: kernels.sparse_square_numba(exps, coefs, X, 2187), repeat)))
    rows.append(("sparse square", "numpy", best_of(lambda: kernels.sparse_square_numpy(exps, coefs, X, 2187), repeat)))
    return rows


def bench_series_mul_subprocess(log2x):
    """End-to-end series_mul under each backend, in fresh interpreters."""
    code = (
        "import time, numpy as np\n"
        "from heckedens.modring import PrimePower\n"
        "from heckedens import series, kernels\n"
        f"X = 1 << {log2x}\n"
        "pp = PrimePower(3, 7)\n"
        "rng = np.random.default_rng(0)\n"
        "a = series.new_series(pp, rng.integers(0, 2187, X + 1))\n"
        "b = series.new_series(pp, rng.integers(0, 2187, X + 1))\n"
        "series.series_mul(series.new_series(pp, rng.integers(0, 2187, 1025)),"
        " series.new_series(pp, rng.integers(0, 2187, 1025)))\n"
        "t0 = time.perf_counter()\n"
        "series.series_mul(a, b)\n"
        "print(kernels.BACKEND, time.perf_counter() - t0)\n"
    )
    rows = []
    for env_val in ("0", "1"):
        out = subprocess.run(
            [sys.executable, "-c", code],
            capture_output=True,
            text=True,
            env={"HECKE_PURE_NUMPY": env_val, "PATH": "/usr/bin:/bin:/usr/local/bin"},
        )
        if out.returncode == 0:
            backend, secs = out.stdout.split()
            rows.append((f"series_mul 2^{log2x} mod 3^7", backend, float(secs)))
        else:
            rows.append((f"series_mul 2^{log2x} mod 3^7", f"env={env_val}", float("nan")))
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--size-log2", type=int, default=20)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-subprocess", action="store_true")
    args = ap.parse_args()

    n = 1 << (args.size_log2 + 2)  # transform length for a 2^size product
    rows = []
    rows += bench_ntt(n, args.repeat)
    rows += bench_sigma(10 ** 6, args.repeat)
    rows += bench_sparse_square(10 ** 6, args.repeat)
    if not args.skip_subprocess:
        rows += bench_series_mul_subprocess(args.size_log2)

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  backend  seconds")
    for name, backend, secs in rows:
        print(f"{name:<{width}}  {backend:<7}  {secs:8.3f}")
    if not kernels.HAVE_NUMBA:
        print("note: numba unavailable or disabled; only the numpy path was timed")


if __name__ == "__main__":
    main()
