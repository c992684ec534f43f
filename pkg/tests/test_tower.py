import numpy as np
import pytest

from heckedens.modring import PrimePower
from heckedens.primes import primes_in
from heckedens.tower import (
    degree_A,
    generic_image_size,
    generic_L_degree,
    nu,
    r_lm,
    sl2_order,
    tower_index,
    tower_report,
)


def _gl2_orders_brute(ell, k):
    """(|SL2(F_ell)|, #{A : det A a (k-1)-th power}) by full enumeration."""
    a, b, c, d = np.meshgrid(*[np.arange(ell)] * 4, indexing="ij")
    det = (a * d - b * c).ravel() % ell
    powers = {pow(u, k - 1, ell) for u in range(1, ell)}
    sl2 = int(np.sum(det == 1))
    img = int(np.sum(np.isin(det, list(powers))))
    return sl2, img


def test_r_lm_examples():
    assert r_lm(12, 23, 1) == 11
    assert r_lm(12, 5, 1) == 1
    assert r_lm(12, 11, 2) == 11


def test_degree_A_examples():
    assert degree_A(12, 23, 1) == 2
    assert degree_A(12, 5, 2) == 20
    for m in range(1, 7):
        assert degree_A(12, 2, m) == PrimePower(2, m).phi


def test_tower_index_examples():
    assert tower_index(12, 11, 1) == 1
    assert tower_index(12, 11, 2) == 11
    assert tower_index(12, 5, 1) == 5


def test_tower_report_examples():
    rep = tower_report(12, 11, 3)
    assert [lv.index for lv in rep.levels] == [1, 11, 11]
    rep2 = tower_report(12, 2, 3)
    assert [lv.deg_A for lv in rep2.levels] == [1, 2, 4]
    rep3 = tower_report(10, 3, 3)
    assert [lv.r for lv in rep3.levels] == [1, 3, 9]
    assert [lv.deg_A for lv in rep3.levels] == [2, 2, 2]
    assert rep.csv_rows()[0] == "m,r,deg_A,index,image_size,L_degree"


def test_generic_image_size_examples():
    assert generic_image_size(12, 5, 1) == 480
    assert generic_image_size(12, 5, 2) == 300000 == 5 ** 4 * 480
    for ell in primes_in(2, 50):
        ell = int(ell)
        # image size >> ell^4: exactly (ell^2-1)(ell^2-ell)/r with r <= k-1
        size = generic_image_size(12, ell, 1)
        assert size * 11 >= (ell ** 2 - 1) * (ell ** 2 - ell)
        assert size * r_lm(12, ell, 1) == (ell ** 2 - 1) * (ell ** 2 - ell)


def test_generic_L_degree_examples():
    assert generic_L_degree(12, 5, 1) == 480
    assert generic_L_degree(10, 7, 1) == 2016
    for k in (10, 12, 18):
        for ell in (5, 7, 11, 13):
            assert generic_L_degree(k, ell, 1) == ell * (ell ** 2 - 1) * (ell - 1)
            assert generic_L_degree(k, ell, 1) == generic_image_size(k, ell, 1) * r_lm(k, ell, 1)


def test_brute_enumeration_small_ell():
    for ell in (2, 3, 5, 7, 11, 13):
        for k in (10, 12, 18):
            sl2, img = _gl2_orders_brute(ell, k)
            assert sl2 == sl2_order(ell, 1)
            assert img == generic_image_size(k, ell, 1)


def test_tower_grid_invariants():
    for k in (10, 12, 14, 16):
        for ell in primes_in(2, 50):
            ell = int(ell)
            rep = tower_report(k, ell, 6)
            v = nu(ell, k - 1)
            for lv in rep.levels:
                assert lv.index == (1 if lv.m <= v else ell)
            for a, b in zip(rep.levels, rep.levels[1:]):
                assert b.deg_A == a.deg_A * a.index
                assert a.deg_A * r_lm(k, ell, a.m) == PrimePower(ell, a.m).phi


def test_image_size_recursion():
    for k in (10, 12, 16):
        for ell in (3, 5, 7, 13):
            if (k - 1) % ell == 0:
                continue
            for m in range(2, 5):
                assert generic_image_size(k, ell, m) == ell ** 4 * generic_image_size(k, ell, m - 1)


def test_validation():
    with pytest.raises(ValueError):
        r_lm(1, 5, 1)
    with pytest.raises(ValueError):
        tower_report(12, 6, 3)
