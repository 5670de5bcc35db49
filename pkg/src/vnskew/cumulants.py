"""Exact cumulants of the von Neumann entropy S and of the induced entropy T."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .exact import PolyValue, pochhammer, psi_int

F = Fraction


@dataclass(frozen=True)
class Dims:
    m: int
    n: int

    def __post_init__(self):
        if not (isinstance(self.m, int) and isinstance(self.n, int)):
            raise TypeError("dimensions must be integers")
        if not 1 <= self.m <= self.n:
            raise ValueError(f"need 1 <= m <= n, got m={self.m}, n={self.n}")

    @property
    def mn(self) -> int:
        return self.m * self.n


@dataclass(frozen=True)
class CumulantSet:
    kappa1: PolyValue
    kappa2: PolyValue
    kappa3: PolyValue
    skewness_float: float  # nan when the variance is zero


@dataclass(frozen=True)
class TCumulantSet:
    kappa1T: PolyValue
    kappa2T: PolyValue
    kappa3T: PolyValue


def _dims(d) -> Dims:
    if isinstance(d, Dims):
        return d
    m, n = d
    return Dims(m, n)


def kappa1(d) -> PolyValue:
    d = _dims(d)
    m, n = d.m, d.n
    return psi_int(0, d.mn + 1) - psi_int(0, n) - F(m + 1, 2 * n)


def kappa2(d) -> PolyValue:
    d = _dims(d)
    m, n, mn = d.m, d.n, d.mn
    return (
        -psi_int(1, mn + 1)
        + psi_int(1, n) * F(m + n, mn + 1)
        - F((m + 1) * (m + 2 * n + 1), 4 * n * n * (mn + 1))
    )


def kappa3(d) -> PolyValue:
    d = _dims(d)
    m, n, mn = d.m, d.n, d.mn
    rational = F(
        (m + 1) * (2 * m ** 3 * n + 3 * m * m * n * n + 2 * m * m + 4 * m * n ** 3 + 15 * m * n * n + 12 * m * n
                   - 2 * n * n + 6 * n + 6),
        4 * n ** 3 * (mn + 1) ** 2 * (mn + 2),
    )
    return (
        psi_int(2, mn + 1)
        - psi_int(2, n) * F(m * m + 3 * mn + n * n + 1, (mn + 1) * (mn + 2))
        + psi_int(1, n + 1) * F((m * m - 1) * (mn - 3 * n * n + 1), n * (mn + 1) ** 2 * (mn + 2))
        - rational
    )


def skewness(d) -> float:
    d = _dims(d)
    if d.m == 1:
        raise ValueError("skewness is undefined for m = 1 (the entropy is identically zero)")
    return kappa3(d).to_float() / kappa2(d).to_float() ** 1.5


def cumulant_set(d) -> CumulantSet:
    d = _dims(d)
    k1, k2, k3 = kappa1(d), kappa2(d), kappa3(d)
    gamma1 = skewness(d) if d.m > 1 else math.nan
    return CumulantSet(k1, k2, k3, gamma1)


def moments_from_cumulants(k1, k2, k3) -> Tuple:
    k1, k2, k3 = (PolyValue.coerce(x) for x in (k1, k2, k3))
    return k1, k2 + k1 * k1, k3 + k2 * k1 * 3 + k1 ** 3


def cumulants_from_moments(m1, m2, m3) -> Tuple:
    m1, m2, m3 = (PolyValue.coerce(x) for x in (m1, m2, m3))
    return m1, m2 - m1 * m1, m3 - m2 * m1 * 3 + m1 ** 3 * 2


def gamma_log_moment(a: int, k: int) -> PolyValue:
    """E[ln^k r] for r ~ Gamma(a, 1), k = 0..3."""
    if not isinstance(a, int) or a < 1:
        raise ValueError("shape a must be a positive integer")
    if k not in (0, 1, 2, 3):
        raise ValueError(f"log power must be 0..3, got {k}")
    p0 = psi_int(0, a)
    if k == 0:
        return PolyValue.const(1)
    if k == 1:
        return p0
    if k == 2:
        return p0 * p0 + psi_int(1, a)
    return p0 ** 3 + p0 * psi_int(1, a) * 3 + psi_int(2, a)


def t_cumulants(d) -> TCumulantSet:
    d = _dims(d)
    m, n, mn = d.m, d.n, d.mn
    p0, p1, p2 = psi_int(0, n), psi_int(1, n), psi_int(2, n)
    k1 = p0 * mn + F(m * (m + 1), 2)
    k2 = p1 * (mn * (m + n)) + p0 * p0 * mn + p0 * (m * (m + 2 * n + 1)) + F(m * (m + 1), 2)
    k3 = (
        p2 * (mn * (m * m + 3 * mn + n * n + 1))
        + p0 * p1 * (6 * mn * (m + n))
        + p1 * (m * (2 * m * m + 12 * mn + 3 * m + 6 * n * n + 3 * n + 1))
        + p0 ** 3 * (2 * mn)
        + p0 * p0 * (3 * m * (m + 3 * n + 1))
        + p0 * (6 * m * (m + n + 1))
        + m * (m + 1)
    )
    return TCumulantSet(k1, k2, k3)


def t_moments(d) -> Tuple[PolyValue, PolyValue, PolyValue]:
    """E[T], E[T^2], E[T^3] under the Wishart-Laguerre ensemble."""
    tc = t_cumulants(d)
    return moments_from_cumulants(tc.kappa1T, tc.kappa2T, tc.kappa3T)


def moment3_S(d, ET3) -> PolyValue:
    """E[S^3] from E[T^3] by the change of measure between the two ensembles."""
    d = _dims(d)
    a = d.mn + 3
    k1, k2 = kappa1(d), kappa2(d)
    es1, es2 = k1, k2 + k1 * k1
    numer = (
        -PolyValue.coerce(ET3)
        + gamma_log_moment(a, 1) * es2 * (3 * pochhammer(d.mn, 3))
        - gamma_log_moment(a, 2) * es1 * (3 * pochhammer(d.mn, 3))
        + gamma_log_moment(a, 3) * pochhammer(d.mn, 3)
    )
    return numer / pochhammer(d.mn, 3)


def moments_S(d) -> Tuple[PolyValue, PolyValue, PolyValue]:
    """E[S], E[S^2], E[S^3], the last one through the T-ensemble pipeline."""
    d = _dims(d)
    k1, k2 = kappa1(d), kappa2(d)
    return k1, k2 + k1 * k1, moment3_S(d, t_moments(d)[2])


def kappa3_via_T(d, kappa3T: PolyValue = None) -> PolyValue:
    """Third cumulant of S from the first three cumulants of T.

    ``kappa3T`` defaults to the closed form; pass the value assembled from
    the kernel integrals to run the full derivation chain.
    """
    d = _dims(d)
    mn = d.mn
    tc = t_cumulants(d)
    k1, k2 = tc.kappa1T, tc.kappa2T
    k3 = tc.kappa3T if kappa3T is None else kappa3T
    inner = (
        -k3
        + k1 * k2 * F(6, mn)
        + k2 * F(3 * (2 * mn + 3), mn + 1)
        - k1 ** 3 * F(4, mn * mn)
        - k1 * k1 * F(3 * (3 * mn + 4), mn * (mn + 1))
        - k1 * F(6 * (mn + 2), mn + 1)
    )
    return inner / pochhammer(mn, 3) + psi_int(2, mn + 1)
