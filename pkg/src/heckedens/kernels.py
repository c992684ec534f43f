"""Hot numeric kernels: numba-jitted loops with pure-numpy fallbacks.

Set HECKE_PURE_NUMPY=1 to force the numpy path (also taken automatically
when numba is not importable).  Both variants of every kernel are exported
so tests and benchmarks/bench_kernels.py can compare them directly.
"""

from __future__ import annotations

import os

import numpy as np

_flag = os.environ.get("HECKE_PURE_NUMPY", "").strip().lower()
FORCE_NUMPY = _flag not in ("", "0", "false", "no")

try:
    if FORCE_NUMPY:
        raise ImportError("numpy path forced by HECKE_PURE_NUMPY")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# number-theoretic transform, radix-2 in-place
#
# a: int64 array, length n a power of two, entries in [0, p)
# wtab: int64 array of the n/2 powers w^0..w^(n/2-1) of a primitive n-th
#       root of unity w mod p
# p: transform prime < 2^31 so every product below fits in int64


def _ntt_loop(a, wtab, p):
    n = a.shape[0]
    j = 0
    for i in range(1, n):
        bit = n >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j |= bit
        if i < j:
            t = a[i]
            a[i] = a[j]
            a[j] = t
    length = 2
    while length <= n:
        half = length >> 1
        step = n // length
        for start in range(0, n, length):
            idx = 0
            for i in range(start, start + half):
                u = a[i]
                v = (a[i + half] * wtab[idx]) % p
                a[i] = (u + v) % p
                a[i + half] = (u - v) % p
                idx += step
        length <<= 1


_bitrev_cache: dict[int, np.ndarray] = {}


def _bitrev_indices(n: int) -> np.ndarray:
    idx = _bitrev_cache.get(n)
    if idx is None:
        idx = np.zeros(n, dtype=np.int64)
        half = 1
        while half < n:
            idx[half : 2 * half] = idx[:half] + n // (2 * half)
            half *= 2
        _bitrev_cache[n] = idx
    return idx


def ntt_inplace_numpy(a, wtab, p):
    """Vectorized stage-by-stage transform; same contract as the jit loop."""
    n = a.shape[0]
    a[:] = a[_bitrev_indices(n)]
    half = 1
    while half < n:
        step = n // (2 * half)
        tw = wtab[: half * step : step]
        blocks = a.reshape(-1, 2 * half)
        lo = blocks[:, :half].copy()
        hi = (blocks[:, half:] * tw) % p
        blocks[:, :half] = (lo + hi) % p
        blocks[:, half:] = (lo - hi) % p
        half *= 2


if HAVE_NUMBA:
    ntt_inplace_numba = njit(cache=True)(_ntt_loop)
    ntt_inplace = ntt_inplace_numba
else:
    ntt_inplace_numba = None
    ntt_inplace = ntt_inplace_numpy


# ---------------------------------------------------------------------------
# divisor power sums: sigma[n] = sum_{d | n} d^e mod q, for 1 <= n <= X


def _sigma_loop(X, e, q):
    out = np.zeros(X + 1, dtype=np.int64)
    for d in range(1, X + 1):
        # d^e mod q by squaring
        t = 1
        b = d % q
        ee = e
        while ee > 0:
            if ee & 1:
                t = (t * b) % q
            b = (b * b) % q
            ee >>= 1
        for n in range(d, X + 1, d):
            out[n] += t
    for n in range(X + 1):
        out[n] %= q
    return out


def sigma_pow_sieve_numpy(X, e, q):
    out = np.zeros(X + 1, dtype=np.int64)
    d = np.arange(X + 1, dtype=np.int64)
    # vectorized d^e mod q by squaring
    t = np.ones(X + 1, dtype=np.int64)
    b = d % q
    ee = e
    while ee > 0:
        if ee & 1:
            t = (t * b) % q
        b = (b * b) % q
        ee >>= 1
    # each slot accumulates one term per divisor, so at most ~1500 values
    # below q < 2^31: comfortably inside int64
    for dd in range(1, X + 1):
        out[dd::dd] += t[dd]
    out %= q
    return out


if HAVE_NUMBA:
    sigma_pow_sieve_numba = njit(cache=True)(_sigma_loop)
    sigma_pow_sieve = sigma_pow_sieve_numba
else:
    sigma_pow_sieve_numba = None
    sigma_pow_sieve = sigma_pow_sieve_numpy


# ---------------------------------------------------------------------------
# dense square of a sparse series: out[e_i + e_j] += c_i * c_j, truncated


def _sparse_square_loop(exps, coefs, X, q):
    out = np.zeros(X + 1, dtype=np.int64)
    k = exps.shape[0]
    for i in range(k):
        ei = exps[i]
        ci = coefs[i]
        if 2 * ei > X:
            break
        out[2 * ei] += ci * ci
        for j in range(i + 1, k):
            e = ei + exps[j]
            if e > X:
                break
            out[e] += 2 * ci * coefs[j]
    for n in range(X + 1):
        out[n] %= q
    return out


def sparse_square_numpy(exps, coefs, X, q):
    out = np.zeros(X + 1, dtype=np.int64)
    e = (exps[:, None] + exps[None, :]).ravel()
    v = (coefs[:, None] * coefs[None, :]).ravel()
    keep = e <= X
    np.add.at(out, e[keep], v[keep])
    out %= q
    return out


if HAVE_NUMBA:
    sparse_square_numba = njit(cache=True)(_sparse_square_loop)
    sparse_square = sparse_square_numba
else:
    sparse_square_numba = None
    sparse_square = sparse_square_numpy
