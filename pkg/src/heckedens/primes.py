"""Segmented prime generation and counting for scans up to x ~ 1e8."""

from __future__ import annotations

import math
from typing import Iterator

import numpy as np

from .errors import CapacityError

SEGMENT_SIZE = 1 << 20
MAX_HI = 10 ** 9


def _simple_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_p[p]:
            is_p[p * p :: p] = False
    return np.flatnonzero(is_p).astype(np.int64)


def iter_prime_segments(lo: int, hi: int, segment: int = SEGMENT_SIZE) -> Iterator[np.ndarray]:
    """Yield primes in [lo, hi] as one int64 array per segment, in order."""
    if hi > MAX_HI:
        raise CapacityError(f"sieve range end {hi} exceeds {MAX_HI}")
    if lo > hi:
        raise ValueError(f"empty range [{lo}, {hi}]")
    lo = max(lo, 2)
    base = _simple_sieve(math.isqrt(hi))
    start = lo
    while start <= hi:
        end = min(start + segment - 1, hi)
        mask = np.ones(end - start + 1, dtype=bool)
        for p in base:
            p = int(p)
            first = max(p * p, ((start + p - 1) // p) * p)
            if first > end:
                continue
            mask[first - start :: p] = False
        if start <= 1:
            mask[: 2 - start] = False
        seg = np.flatnonzero(mask) + start
        # base primes p with p*p > p are never crossed off below p*p
        yield seg[(seg >= lo)]
        start = end + 1


def primes_in(lo: int, hi: int, segment: int = SEGMENT_SIZE) -> np.ndarray:
    """All primes in [lo, hi], increasing, memory proportional to segment size."""
    parts = list(iter_prime_segments(lo, hi, segment))
    if not parts:
        return np.array([], dtype=np.int64)
    return np.concatenate(parts)


def prime_count(x: int) -> int:
    """pi(x), the number of primes <= x."""
    if x < 2:
        return 0
    return sum(len(seg) for seg in iter_prime_segments(2, x))
