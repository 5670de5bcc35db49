import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vnskew.cumulants import (
    Dims,
    cumulant_set,
    cumulants_from_moments,
    gamma_log_moment,
    kappa1,
    kappa2,
    kappa3,
    kappa3_via_T,
    moment3_S,
    moments_from_cumulants,
    moments_S,
    skewness,
    t_cumulants,
    t_moments,
)
from vnskew.ensemble import binary_entropy, simplex_quadrature_m2
from vnskew.exact import G, Z2, Z3, PolyValue, psi_int
from vnskew.laguerre import log_weighted_quadrature


def quad_moments(n):
    return [simplex_quadrature_m2(n, lambda x, k=k: binary_entropy(x) ** k) for k in (1, 2, 3)]


def test_dims_validation():
    assert Dims(2, 5).mn == 10
    for bad in ((0, 3), (4, 3), (2.0, 3)):
        with pytest.raises((ValueError, TypeError)):
            Dims(*bad)


def test_degenerate_subsystem_is_exactly_zero():
    for n in range(1, 51):
        assert kappa1((1, n)).is_zero()
        assert kappa2((1, n)).is_zero()
        assert kappa3((1, n)).is_zero()
        assert kappa3_via_T((1, n)).is_zero()


def test_two_by_two_against_quadrature():
    e1, e2, e3 = quad_moments(2)
    assert kappa1((2, 2)) == PolyValue.const(F(1, 3))
    assert e1 == pytest.approx(1 / 3, abs=1e-10)
    k2 = e2 - e1 ** 2
    k3 = e3 - 3 * e2 * e1 + 2 * e1 ** 3
    assert kappa2((2, 2)).to_float() == pytest.approx(k2, abs=1e-10)
    assert kappa3((2, 2)).to_float() == pytest.approx(k3, abs=1e-9)
    assert skewness((2, 2)) == pytest.approx(k3 / k2 ** 1.5, rel=1e-8)
    assert moments_S((2, 2))[2].to_float() == pytest.approx(e3, abs=1e-9)


def test_two_by_three_third_cumulant_quadrature():
    e1, e2, e3 = quad_moments(3)
    assert kappa3((2, 3)).to_float() == pytest.approx(e3 - 3 * e2 * e1 + 2 * e1 ** 3, abs=1e-9)


def test_skewness_sign_and_decay():
    assert skewness((4, 8)) < 0
    assert kappa3((4, 8)).to_float() < 0
    assert abs(skewness((16, 32))) < abs(skewness((4, 8)))
    with pytest.raises(ValueError):
        skewness((1, 5))


def test_cumulant_set_fields():
    cs = cumulant_set((3, 4))
    assert cs.skewness_float == pytest.approx(cs.kappa3.to_float() / cs.kappa2.to_float() ** 1.5)
    assert math.isnan(cumulant_set((1, 4)).skewness_float)


def test_moment_conversions_examples():
    assert moments_from_cumulants(0, 1, 0) == (PolyValue(), PolyValue.const(1), PolyValue())
    assert cumulants_from_moments(1, 2, 6) == (PolyValue.const(1), PolyValue.const(1), PolyValue.const(2))


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=50)


@settings(max_examples=100)
@given(rationals, rationals, rationals)
def test_moment_round_trip(a, b, c):
    assert cumulants_from_moments(*moments_from_cumulants(a, b, c)) == tuple(PolyValue.const(x) for x in (a, b, c))


def test_gamma_log_moments():
    assert gamma_log_moment(7, 0) == PolyValue.const(1)
    assert gamma_log_moment(4, 1) == PolyValue.const(F(11, 6)) - G
    assert gamma_log_moment(1, 3) == -(G ** 3) - G * Z2 * 3 - Z3 * 2
    q = log_weighted_quadrature(lambda x: np.ones_like(x), 3, 1) / 6
    assert gamma_log_moment(4, 1).to_float() == pytest.approx(q, rel=1e-9)
    q3 = log_weighted_quadrature(lambda x: np.ones_like(x), 0, 3)
    assert gamma_log_moment(1, 3).to_float() == pytest.approx(q3, rel=1e-9)
    with pytest.raises(ValueError):
        gamma_log_moment(2, 4)


def test_t_cumulants_single_eigenvalue():
    for n in range(1, 12):
        assert t_cumulants((1, n)).kappa1T == psi_int(0, n) * n + 1
    # variance of theta ln theta for theta ~ Gamma(2)
    e1 = log_weighted_quadrature(lambda x: np.ones_like(x), 2, 1)
    e2 = log_weighted_quadrature(lambda x: np.ones_like(x), 3, 2)
    assert t_cumulants((1, 2)).kappa2T.to_float() == pytest.approx(e2 - e1 ** 2, rel=1e-10)


def test_weight_bounded_by_three():
    for d in ((2, 3), (4, 8), (5, 5)):
        for v in (kappa1(d), kappa2(d), kappa3(d), *t_moments(d)):
            assert v.weight() <= 3


def test_moment3_degenerate():
    assert moments_S((1, 6))[2].is_zero()


def test_kappa3_via_T_examples():
    assert kappa3_via_T((2, 3)) == kappa3((2, 3))
    assert kappa3_via_T((5, 9)) == kappa3((5, 9))


def test_kappa3_via_T_grid():
    for n in range(1, 21):
        for m in range(1, n + 1):
            assert kappa3_via_T((m, n)) == kappa3((m, n)), (m, n)


def test_third_moment_pipeline_reproduces_kappa3():
    for n in range(1, 13):
        for m in range(1, n + 1):
            assert cumulants_from_moments(*moments_S((m, n)))[2] == kappa3((m, n)), (m, n)


def test_scaling_along_half_ratio():
    rows = []
    for n in (16, 32, 64):
        d = (n // 2, n)
        rows.append((n * n * kappa2(d).to_float(), n ** 4 * kappa3(d).to_float(), n * skewness(d)))
    for prev, cur in zip(rows, rows[1:]):
        for a, b in zip(prev, cur):
            assert abs(b - a) / abs(a) < 0.25
