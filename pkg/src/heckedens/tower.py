"""Degree bookkeeping for the cyclotomic tower cut out by the determinant
character of the mod-ell^m representation of a weight-k eigenform, and the
generic image/compositum degrees used as exact density denominators."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .modring import PrimePower, val_ell

# The generic-model caveat attached to every report: for small ell the image
# can be smaller than {det in (units)^(k-1)} and the abelian intersection can
# exceed the determinant subfield by a factor up to gcd(k-1, phi) <= k-1.
GENERIC_CAVEAT = (
    "generic-image model: exact only for non-exceptional ell; "
    "abelian-intersection index taken = 1 (true for large ell)"
)


def _check(k: int, ell: int, m: int):
    if k < 2:
        raise ValueError("k must be >= 2")
    PrimePower(ell, m)  # validates primality and range


def r_lm(k: int, ell: int, m: int) -> int:
    """gcd(k-1, phi(ell^m)), the index of the determinant subfield."""
    _check(k, ell, m)
    return math.gcd(k - 1, PrimePower(ell, m).phi)


def degree_A(k: int, ell: int, m: int) -> int:
    """Degree over Q of the subfield of Q(zeta_{ell^m}) cut out by det^(k-1)."""
    pp = PrimePower(ell, m)
    return pp.phi // r_lm(k, ell, m)


def tower_index(k: int, ell: int, m: int) -> int:
    """Relative degree from level m to m+1: 1 while m <= nu_ell(k-1), else ell."""
    _check(k, ell, m)
    return ell * r_lm(k, ell, m) // r_lm(k, ell, m + 1)


def sl2_order(ell: int, m: int) -> int:
    """|SL2(Z/ell^m)| = ell^(3(m-1)) * ell * (ell^2 - 1)."""
    return ell ** (3 * (m - 1)) * ell * (ell * ell - 1)


def generic_image_size(k: int, ell: int, m: int) -> int:
    """Order of {A in GL2(Z/ell^m) : det A a (k-1)-th power of a unit}.

    The determinant is surjective onto (units)^(k-1) with kernel the full
    SL2, so the order is |SL2| * phi / gcd(k-1, phi) at every level.
    """
    pp = PrimePower(ell, m)
    return sl2_order(ell, m) * pp.phi // r_lm(k, ell, m)


def generic_L_degree(k: int, ell: int, m: int) -> int:
    """Generic degree of the compositum of the representation field with
    Q(zeta_{ell^m}): image size times the cyclotomic degree over the shared
    abelian layer, which collapses to |SL2(Z/ell^m)| * phi(ell^m)."""
    _check(k, ell, m)
    return sl2_order(ell, m) * PrimePower(ell, m).phi


@dataclass(frozen=True)
class TowerLevel:
    m: int
    r: int
    deg_A: int
    index: int
    image_size: int
    L_degree: int


@dataclass(frozen=True)
class TowerReport:
    k: int
    ell: int
    levels: tuple[TowerLevel, ...]
    caveat: str = GENERIC_CAVEAT

    def csv_rows(self) -> list[str]:
        rows = ["m,r,deg_A,index,image_size,L_degree"]
        for lv in self.levels:
            rows.append(
                f"{lv.m},{lv.r},{lv.deg_A},{lv.index},{lv.image_size},{lv.L_degree}"
            )
        return rows


def tower_report(k: int, ell: int, up_to_m: int) -> TowerReport:
    """Per-level degree table; index column is [level m -> level m+1]."""
    _check(k, ell, up_to_m)
    levels = []
    for m in range(1, up_to_m + 1):
        levels.append(
            TowerLevel(
                m=m,
                r=r_lm(k, ell, m),
                deg_A=degree_A(k, ell, m),
                index=tower_index(k, ell, m),
                image_size=generic_image_size(k, ell, m),
                L_degree=generic_L_degree(k, ell, m),
            )
        )
    report = TowerReport(k=k, ell=ell, levels=tuple(levels))
    for a, b in zip(report.levels, report.levels[1:]):
        assert b.deg_A == a.deg_A * a.index
    return report


def nu(ell: int, x: int) -> int:
    """ell-adic valuation of x (x != 0)."""
    if x == 0:
        raise ValueError("valuation of 0 undefined here")
    return val_ell(x, ell, cap=x.bit_length() + 1)
