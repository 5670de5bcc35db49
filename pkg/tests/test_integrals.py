import math

import numpy as np
import pytest

from vnskew import integrals as I
from vnskew.cumulants import t_cumulants
from vnskew.exact import PolyValue, psi_int
from vnskew.laguerre import (
    LogIntegralParams,
    gauss_laguerre,
    gauss_laguerre_2d,
    kernel_sum,
    laguerre,
    limit_schrodinger_log,
    limit_series,
    log_integral_quadrature,
    log_weighted_quadrature,
)


def test_block_params_cover_every_block_and_poles_cancel():
    for n in range(1, 8):
        for m in range(1, n + 1):
            for name, idx, p, closed in I.block_params(m, n):
                series = limit_series(p)
                assert all(series.coeff(k).is_zero() for k in (-1, -2, -3)), (name, m, n, idx)
                assert series.coeff(0) == closed, (name, m, n, idx)


def test_ias1_matches_limit_and_quadrature():
    p = LogIntegralParams(5, 3, 3, 1, 1, 3)
    assert I.ias1(2, 4) == limit_schrodinger_log(p)
    q = LogIntegralParams(4, 2, 2, 1, 1, 3)
    assert I.ias1(2, 3).to_float() == pytest.approx(log_integral_quadrature(q), rel=1e-8)


def test_ias1_reproduced_by_limit_at_3_5():
    assert I.ias1(3, 5) == limit_schrodinger_log(LogIntegralParams(5, 3, 3, 2, 2, 3))


def test_ias2_square_case_finite():
    v = I.ias2(3, 3)
    assert isinstance(v, PolyValue) and math.isfinite(v.to_float())
    assert I.ias2(1, 4).is_zero()


def test_ibs_blocks_against_quadrature_and_limit():
    v = I.ibs_block(3, 5, "IBS1", 0)
    ref = log_weighted_quadrature(lambda x: np.ones_like(x), 3, 1, tol=1e-11)
    assert v.to_float() == pytest.approx(ref, rel=1e-10)
    v3 = I.ibs_block(2, 4, "IBS3", 0)
    ref3 = log_integral_quadrature(LogIntegralParams(3, 2, 2, 0, 1, 1), tol=1e-11)
    assert v3.to_float() == pytest.approx(ref3, rel=1e-10)
    # outside the assembly range for m = 4, but the block formula itself still holds
    assert I.ibs4(4, 6, 1, 2) == limit_schrodinger_log(LogIntegralParams(3, 2, 2, 1, 4, 1))
    assert I.ibs_block(4, 7, "IBS7", 0, 2) == limit_schrodinger_log(LogIntegralParams(5, 3, 3, 0, 3, 2))


@pytest.mark.parametrize(
    "args",
    [("IBS4", 0, 0), ("IBS7", 0, 1), ("IBS1", 5), ("IBS3", 3), ("IBS9", 0), ("IBS4", 1)],
)
def test_ibs_block_rejects_bad_indices(args):
    with pytest.raises(ValueError):
        I.ibs_block(4, 6, *args)


def test_IA_single_eigenvalue():
    for n in range(1, 8):
        third = psi_int(0, n + 3) ** 3 + psi_int(0, n + 3) * psi_int(1, n + 3) * 3 + psi_int(2, n + 3)
        assert I.integral_IA(1, n) == third * (math.factorial(n + 2) // math.factorial(n - 1))


def test_IB_two_dimensional_quadrature():
    m, n = 2, 3
    a = n - m

    def f(x, y):
        k = kernel_sum(m, n, x, y)
        return (x * y) ** a * x ** 2 * y * np.log(x) ** 2 * np.log(y) * k * k

    assert I.integral_IB(m, n).to_float() == pytest.approx(gauss_laguerre_2d(f), rel=1e-6)


def test_triple_combination_small():
    assert I.kappa3T_from_integrals(2, 2) == t_cumulants((2, 2)).kappa3T
    assert I.kappa3T_from_integrals(3, 3) == I.kappa3T_closed(3, 3)
    assert I.kappa3T_from_integrals(1, 1) == I.kappa3T_closed(1, 1)


@pytest.mark.parametrize("m,n", [(2, 4), (3, 5), (2, 5), (4, 9)])
def test_closed_forms_match_finite_sums(m, n):
    assert I.closed_IA(m, n) == I.integral_IA(m, n)
    assert I.closed_IB(m, n) == I.integral_IB(m, n)
    assert I.closed_IC(m, n) == I.integral_IC(m, n)


def test_closed_forms_refuse_square():
    for f in (I.closed_IA, I.closed_IB, I.closed_IC):
        with pytest.raises(ValueError):
            f(3, 3)


def test_basis_cancellation():
    for n in range(3, 12):
        for m in range(2, n):
            assert I.surviving_combination(m, n) == I.kappa3T_closed(m, n)


def test_table_entries_are_rational():
    from fractions import Fraction

    for tab, size, poly_entry in ((I.table_a, 18, 17), (I.table_b, 25, 23), (I.table_c, 29, 27)):
        row = tab(3, 7)
        assert len(row) == size + 1 and row[0] is None
        for i in range(1, size + 1):
            if i == poly_entry:
                assert isinstance(row[i], PolyValue)
            else:
                assert isinstance(row[i], (int, Fraction)), i
