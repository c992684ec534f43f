"""Exact generic densities: the joint (p mod q, a_f(p) mod q) class density,
roots of the lift polynomial g_u, assembly of the eigenvalue-divisibility
density, and the partition machinery behind its decay bound."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CapacityError
from .matcount import count_trace_det, trace_det_counts_for_det
from .modring import PrimePower, mult_order
from .series import SUPPORTED_WEIGHTS
from .tower import GENERIC_CAVEAT, generic_L_degree

ROOT_SCAN_MAX = 10 ** 6

# envelope constants fitted on the exhaustive desk-scale grid, not proven
FITTED_UV_SHAPE = 5        # |delta_uv(ell) * ell^2 - 1| <= 5/ell
FITTED_MAIN_TERM = 10      # |delta_F(ell) * 2 ell / n - 1| <= 10 n^2 / ell
FITTED_DECAY_N2 = 4        # delta_F(ell^m) <= 4 / ell^m            (n = 2)
FITTED_DECAY_GEN = 8       # delta_F(ell^m) <= 8 m^2 / ell^(3m/n)   (n > 2)
FITTED_NOTE = "envelope constants fitted on the desk-scale grid, not proven"


@dataclass(frozen=True)
class LiftParams:
    """Siegel weight k and degree n of the lift; the source eigenform has
    weight 2k - n, which must index a one-dimensional cusp space."""

    k: int
    n: int

    def __post_init__(self):
        if self.k % 2 or self.n % 2 or self.n < 2:
            raise ValueError(f"k, n must be even positive, got k={self.k}, n={self.n}")
        if self.k <= self.n + 1:
            raise ValueError(f"need k > n+1, got k={self.k}, n={self.n}")
        if self.source_weight not in SUPPORTED_WEIGHTS:
            raise ValueError(
                f"source weight 2k-n = {self.source_weight} not in {SUPPORTED_WEIGHTS}"
            )

    @property
    def source_weight(self) -> int:
        return 2 * self.k - self.n


@dataclass(frozen=True)
class GammaRoots:
    modulus: PrimePower
    u: int
    params: LiftParams
    gamma: tuple[int, ...]


@dataclass(frozen=True)
class DensityReport:
    kind: str  # "uv" | "ikeda"
    params: dict
    delta_exact: Fraction
    main_term: Fraction | None
    decay_bound: Fraction
    caveats: tuple[str, ...] = (GENERIC_CAVEAT, FITTED_NOTE)


@dataclass(frozen=True)
class PartitionStat:
    n: int
    m: int
    partitions: tuple[tuple[int, ...], ...]
    min_value: int
    argmin: tuple[int, ...]


def gamma_roots(u: int, params: LiftParams, pp: PrimePower) -> GammaRoots:
    """gamma_i = -(u^(k-i) + u^(k-n-1+i)) mod q for i = 1..n/2."""
    q = pp.q
    u %= q
    if u % pp.ell == 0:
        raise ValueError(f"u = {u} is not a unit mod {pp}")
    k, n = params.k, params.n
    g = tuple(
        (-(pow(u, k - i, q) + pow(u, k - n - 1 + i, q))) % q for i in range(1, n // 2 + 1)
    )
    return GammaRoots(pp, u, params, g)


def _root_mask(gamma: tuple[int, ...], pp: PrimePower) -> np.ndarray:
    """Boolean mask over w in [0, q) of prod_i (w - gamma_i) = 0 mod q,
    via capped valuations: sum_i min(nu(w - gamma_i), m) >= m."""
    q, ell, m = pp.q, pp.ell, pp.m
    w = np.arange(q, dtype=np.int64)
    total = np.zeros(q, dtype=np.int64)
    for g in gamma:
        rem = (w - g) % q
        v = np.zeros(q, dtype=np.int64)
        active = np.ones(q, dtype=bool)
        for _ in range(m):
            active &= rem % ell == 0
            v[active] += 1
            rem[active] //= ell
        total += v
    return total >= m


def g_u_root_count(u: int, params: LiftParams, pp: PrimePower) -> tuple[np.ndarray, int]:
    """All w mod q with g_u(w) = 0, found by scanning every residue."""
    if pp.q > ROOT_SCAN_MAX:
        raise CapacityError(f"root scan limited to q <= {ROOT_SCAN_MAX}")
    gr = gamma_roots(u, params, pp)
    mask = _root_mask(gr.gamma, pp)
    roots = np.flatnonzero(mask)
    return roots, int(len(roots))


def sum_Ngu(params: LiftParams, ell: int) -> dict:
    """Sum over units u of the number of roots of g_u mod ell (m = 1), with
    the small-order accounting that controls the deficit from n/2 per u."""
    pp = PrimePower(ell, 1)
    n = params.n
    total = 0
    small_order = 0
    for u in range(1, ell):
        _, cnt = g_u_root_count(u, params, pp)
        total += cnt
        if mult_order(u, pp) <= n:
            small_order += 1
    if small_order > n * n:
        raise AssertionError(f"small-order unit count {small_order} exceeds n^2 = {n*n}")
    return {
        "sum": total,
        "main_term": (n // 2) * ell,
        "small_order_units": small_order,
        "small_order_bound": n * n,
    }


def delta_uv_generic(weight: int, pp: PrimePower, u: int, v: int) -> DensityReport:
    """Generic density of primes with (p, a_f(p)) = (u, v) mod q, for f of the
    given weight: matrices of trace v and determinant u^(weight-1) over the
    generic compositum degree."""
    q = pp.q
    u %= q
    if u % pp.ell == 0:
        raise ValueError(f"u = {u} is not a unit mod {pp}")
    d_u = pow(u, weight - 1, q)
    num = count_trace_det(pp, v % q, d_u).count
    den = generic_L_degree(weight, pp.ell, pp.m)
    delta = Fraction(num, den)
    return DensityReport(
        kind="uv",
        params={"weight": weight, "ell": pp.ell, "m": pp.m, "u": u, "v": v % q},
        delta_exact=delta,
        main_term=Fraction(1, pp.ell ** (2 * pp.m)),
        decay_bound=Fraction(pp.ell + FITTED_UV_SHAPE, pp.ell ** (2 * pp.m + 1)),
    )


def delta_F_generic(params: LiftParams, pp: PrimePower) -> DensityReport:
    """Exact generic density of primes whose lift eigenvalue vanishes mod q:
    sum over units u and roots w of g_u of the (u, w) class density.

    The determinant exponent uses the source-form weight 2k - n (the
    representation attached to f has det = p^(2k-n-1)); the gamma exponents
    use the Siegel weight k.  Both weights are exposed on LiftParams.
    """
    if pp.q > ROOT_SCAN_MAX:
        raise CapacityError(f"root scan limited to q <= {ROOT_SCAN_MAX}")
    wf = params.source_weight
    q, ell, m = pp.q, pp.ell, pp.m
    den = generic_L_degree(wf, ell, m)
    num = 0
    for u in range(1, q):
        if u % ell == 0:
            continue
        roots, cnt = g_u_root_count(u, params, pp)
        if cnt == 0:
            continue
        d_u = pow(u, wf - 1, q)
        counts_t = trace_det_counts_for_det(pp, d_u)
        num += int(counts_t[roots].sum())
    delta = Fraction(num, den)
    n = params.n
    if n == 2:
        bound = Fraction(FITTED_DECAY_N2, q)
    else:
        # rational envelope with the exponent floored: 8 m^2 / ell^floor(3m/n)
        bound = Fraction(FITTED_DECAY_GEN * m * m, ell ** (3 * m // n))
    return DensityReport(
        kind="ikeda",
        params={"k": params.k, "n": params.n, "ell": ell, "m": m},
        delta_exact=delta,
        main_term=Fraction(n, 2 * ell) if m == 1 else None,
        decay_bound=bound,
    )


def _partitions(parts: int, total: int, cap: int | None = None):
    """Weakly decreasing nonnegative tuples of given length summing to total."""
    if parts == 1:
        if cap is None or total <= cap:
            yield (total,)
        return
    hi = total if cap is None else min(cap, total)
    for first in range(hi, -1, -1):
        if first * parts < total:
            break
        for rest in _partitions(parts - 1, total - first, first):
            yield (first,) + rest


def partitions_stat(n: int, m: int) -> PartitionStat:
    """Enumerate partitions of m into n/2 weakly decreasing parts and minimize
    s_1 + floor((s_2 + 1)/2); the closed-form argmin is the near-equal vector."""
    if n % 2 or n < 2:
        raise ValueError("n must be even >= 2")
    if m < 1:
        raise ValueError("m must be >= 1")
    parts = tuple(_partitions(n // 2, m))

    def score(vec: tuple[int, ...]) -> int:
        s2 = vec[1] if len(vec) > 1 else 0
        return vec[0] + (s2 + 1) // 2

    min_value = min(score(v) for v in parts)
    qq, i = divmod(m, n // 2)
    closed_form = tuple([qq + 1] * i + [qq] * (n // 2 - i))
    if score(closed_form) != min_value:
        raise AssertionError(
            f"closed-form argmin {closed_form} scores {score(closed_form)} != min {min_value}"
        )
    # the 3m/n bound belongs to the n >= 4 decay analysis; n = 2 has the
    # single partition (m) and no such claim
    if n >= 4 and min_value * n < 3 * m:
        raise AssertionError(f"partition minimum {min_value} below 3m/n for n={n}, m={m}")
    return PartitionStat(n=n, m=m, partitions=parts, min_value=min_value, argmin=closed_form)
