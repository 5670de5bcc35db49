"""Log-weighted kernel integrals I_A, I_B, I_C and the induced-entropy third cumulant.

Two independent routes are provided:

* finite sums: the resolved block integrals (``ias_blocks``, ``ibs_block``)
  inserted into the kernel expansions of I_A, I_B, I_C;
* closed forms: coefficient tables in (m, n) multiplying a fixed basis of
  polygamma monomials and three unsimplifiable sums.

``kappa3T_from_integrals`` combines I_A - 3 I_B + 2 I_C from the finite sums.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

from .exact import PolyValue, pochhammer, psi_int
from .laguerre import LogIntegralParams

F = Fraction
fac = math.factorial


def _p0(x: int) -> PolyValue:
    return psi_int(0, x)


def _p1(x: int) -> PolyValue:
    return psi_int(1, x)


def _p2(x: int) -> PolyValue:
    return psi_int(2, x)


def _second(x: int) -> PolyValue:
    return _p0(x) ** 2 + _p1(x)


def _third(x: int) -> PolyValue:
    return _p0(x) ** 3 + _p0(x) * _p1(x) * 3 + _p2(x)


def _check(m: int, n: int) -> None:
    if not (isinstance(m, int) and isinstance(n, int)) or m < 1 or m > n:
        raise ValueError(f"need integers 1 <= m <= n, got ({m}, {n})")


# ---------------------------------------------------------------------------
# resolved block integrals


def ias1(m: int, n: int) -> PolyValue:
    """int x^(n-m+3) e^-x ln^3 x (L_{m-1}^(n-m+1))^2 dx."""
    _check(m, n)
    base = (
        18 * m * m * n + 39 * m * m - 30 * m * n - 57 * m + 12 * n + 30
        + _p0(n) * (3 * (13 * m * m * n + 12 * m * m + 4 * m * n * n - 3 * m * n - 4 * m - 4 * n * n + 2 * n + 4))
        + _second(n) * (6 * (3 * m * m * n + m * m + 4 * m * n * n + 3 * m * n + m - n * n))
        + _third(n) * (2 * n * (m * m + 4 * m * n + m + n * n - n))
    )
    out = base * F(fac(n - 1), 2 * fac(m - 1))
    for k in range(1, m - 2):
        w = F(6 * fac(n - k), fac(m - 3 - k)) * (
            F(3, k + 2) - F(3, k) + F(1, k * k) + F(4, (k + 1) ** 2) + F(1, (k + 2) ** 2)
        )
        out = out + (_p0(n + 1 - k) - _p0(k) * 2 + _p0(1) * 2 + 3) * w
    return out


def ias2(m: int, n: int) -> PolyValue:
    """int x^(n-m+3) e^-x ln^3 x L_{m-2}^(n-m+1) L_m^(n-m+1) dx; zero when m = 1."""
    _check(m, n)
    if m < 2:
        return PolyValue()
    base = (
        40 * m * n - m * m + 69 * m - 32 * n - 38
        + _p0(n) * (8 * (8 * m * n - m * m + 9 * m + 3 * n * n + 5 * n + 1))
        + _second(n) * (2 * (8 * m * n - m * m + 5 * m + 18 * n * n + 26 * n + 6))
        + _third(n) * (8 * n * (n + 1))
    )
    out = base * F(fac(n - 1), 8 * fac(m - 2))
    # the trailing sum sits outside the factorial prefactor
    for k in range(1, m - 3):
        w = F(fac(n - k - 1), fac(m - k - 4)) * (
            F(1, 2 * k) - F(4, k + 1) + F(4, k + 3) - F(1, 2 * (k + 4)) + F(6, (k + 2) ** 2)
        )
        out = out + (_p0(n - k) - _p0(k + 2) - _p0(k) + _p0(1) * 2 + 3) * w
    return out


def ias_blocks(m: int, n: int) -> Tuple[PolyValue, PolyValue]:
    return ias1(m, n), ias2(m, n)


def ibs1(m: int, n: int, k: int) -> PolyValue:
    """A_{k,k}^{(a,a)}(a+1), a = n - m."""
    a = n - m
    return (_p0(k + a + 1) * (2 * k + a + 1) + 2 * k + 1) * F(fac(k + a), fac(k))


def ibs2(m: int, n: int, k: int) -> PolyValue:
    """B_{k,k}^{(a,a)}(a+2)."""
    a = n - m
    base = (
        F(17 * k * k + k * (4 * a + 7) + 4, 2)
        + _p0(k + a + 1) * (2 * (7 * k * k + k * (4 * a + 7) + 2 * a + 3))
        + _second(k + a + 1) * (6 * k * k + 6 * k * (a + 1) + (a + 2) * (a + 1))
    )
    tail = F(0)
    for i in range(3, k + 1):
        tail += F(2 * fac(k - i + a + 2), fac(k - i)) * (
            F(3, i) - F(3, i - 2) + F(1, i * i) + F(4, (i - 1) ** 2) + F(1, (i - 2) ** 2)
        )
    return base * F(fac(k + a), fac(k)) + tail


def ibs3(m: int, n: int, j: int) -> PolyValue:
    """A_{j,j+1}^{(a,a)}(a+1)."""
    a = n - m
    return -(_p0(j + a + 1) * (j + a + 1) + F(3 * j, 2) + a + 2) * F(fac(j + a), fac(j))


def ibs4(m: int, n: int, j: int, k: int) -> PolyValue:
    """A_{j,j+k+1}^{(a,a)}(a+1) for k > 0 (a pure rational)."""
    a = n - m
    return PolyValue.const(F(fac(j + a), fac(j) * (k + 1)) * (F(j + a + 1, k) - F(j, k + 2)))


def ibs5(m: int, n: int, j: int) -> PolyValue:
    """B_{j,j+1}^{(a,a)}(a+2)."""
    a = n - m
    base = (
        F(7 * j * j, 2) + F(5 * j * (a + 3), 2) + 2 * a + 5
        + _p0(j + a + 1) * (F(16 * j * j, 3) + j * (6 * a + F(38, 3)) + a * a + 7 * a + 8)
        + _second(j + a + 1) * ((j + a + 1) * (2 * j + a + 2))
    )
    tail = F(0)
    for l in range(3, j + 1):
        tail += F(2 * fac(j - l + a + 2), fac(j - l)) * (
            -F(1, 3 * (l + 1)) - F(3, l) + F(3, l - 1) + F(1, 3 * (l - 2)) - F(2, l * l) - F(2, (l - 1) ** 2)
        )
    return base * F(-2 * fac(j + a), fac(j)) + tail


def ibs6(m: int, n: int, j: int) -> PolyValue:
    """B_{j,j+2}^{(a,a)}(a+2)."""
    a = n - m
    base = (
        F(10 * j * j, 3) + F(2 * j * (7 * a + 20), 3) + a * a + 9 * a + 13
        + _p0(j + a + 1) * F(25 * j * j + j * (44 * a + 87) + 6 * (a + 3) * (3 * a + 4), 6)
        + _second(j + a + 1) * ((j + a + 1) * (j + a + 2))
    )
    tail = F(0)
    for l in range(3, j + 1):
        tail += F(4 * fac(j - l + a + 2), fac(j - l)) * (
            F(1, 3 * (l + 1)) - F(1, 24 * (l + 2)) - F(1, 3 * (l - 1)) + F(1, 24 * (l - 2)) + F(1, 2 * l * l)
        )
    return base * F(fac(j + a), fac(j)) + tail


def ibs7(m: int, n: int, j: int, k: int) -> PolyValue:
    """B_{j,j+k+1}^{(a,a)}(a+2) for k > 1."""
    a = n - m
    g1 = _p0(1)
    body = (
        (g1 * 24 + k * k - 7 * k + 56) * (j * j)
        + (k * k * (2 * m - 2 * n - 5) + (g1 * (12 * (a + 2)) + 18 * n - 18 * m + 55) * k
           + (g1 * (3 * (3 * a + 4)) + 18 * n - 18 * m + 31) * 4) * j
        + (g1 * (2 * (a + 1) * (a + 2)) + 3 * m * m - 6 * m * n - 13 * m + 3 * n * n + 13 * n + 12) * ((k + 2) * (k + 3))
        + (_p0(j + a + 1) - _p0(k - 1)) * (2 * (12 * j * j + 6 * j * (k * (a + 2) + 3 * a + 4) + (k + 2) * (k + 3) * (a + 1) * (a + 2)))
    )
    tail = F(0)
    for l in range(3, j + 1):
        tail += F(8 * fac(j - l + a + 2), fac(j - l) * (l - 2) * (l - 1) * l * (k + l - 1) * (k + l) * (k + l + 1))
    return body * F(-2 * fac(j + a), fac(j) * pochhammer(k - 1, 5)) + tail


IBS_NAMES = ("IBS1", "IBS2", "IBS3", "IBS4", "IBS5", "IBS6", "IBS7")


def ibs_block(m: int, n: int, which: str, *indices: int) -> PolyValue:
    """Dispatch to one of the seven I_B blocks with range and branch checks.

    IBS1/IBS2 take ``k`` (0 <= k <= m-1); IBS3/IBS5/IBS6 take ``j``;
    IBS4/IBS7 take ``(j, k)`` with the offset ``k`` of the pair (j, j+k+1).
    """
    _check(m, n)
    which = which.upper()
    if which not in IBS_NAMES:
        raise ValueError(f"unknown block {which!r}")
    if which in ("IBS1", "IBS2"):
        (k,) = _arity(indices, 1, which)
        if not 0 <= k <= m - 1:
            raise ValueError(f"{which} needs 0 <= k <= m-1, got {k}")
        return ibs1(m, n, k) if which == "IBS1" else ibs2(m, n, k)
    if which in ("IBS3", "IBS5", "IBS6"):
        (j,) = _arity(indices, 1, which)
        offset = {"IBS3": 0, "IBS5": 0, "IBS6": 1}[which]
        if not 0 <= j <= m - offset - 2:
            raise ValueError(f"{which} index j={j} out of range for m={m}")
        return {"IBS3": ibs3, "IBS5": ibs5, "IBS6": ibs6}[which](m, n, j)
    j, k = _arity(indices, 2, which)
    floor = 1 if which == "IBS4" else 2
    if k < floor:
        raise ValueError(f"{which} applies only for k >= {floor}, got k={k}")
    if not (0 <= j and j + k + 1 <= m - 1):
        raise ValueError(f"{which} indices (j={j}, k={k}) out of range for m={m}")
    return ibs4(m, n, j, k) if which == "IBS4" else ibs7(m, n, j, k)


def _arity(indices, count, which):
    if len(indices) != count:
        raise ValueError(f"{which} takes {count} index argument(s), got {len(indices)}")
    return indices


def block_params(m: int, n: int) -> List[Tuple[str, Tuple[int, ...], LogIntegralParams, PolyValue]]:
    """Every block integral used by the assemblies: (name, indices, log-integral parameters, closed-form value)."""
    _check(m, n)
    a = n - m
    out = [("IAS1", (), LogIntegralParams(a + 3, a + 1, a + 1, m - 1, m - 1, 3), ias1(m, n))]
    if m >= 2:
        out.append(("IAS2", (), LogIntegralParams(a + 3, a + 1, a + 1, m - 2, m, 3), ias2(m, n)))
    for k in range(m):
        out.append(("IBS1", (k,), LogIntegralParams(a + 1, a, a, k, k, 1), ibs1(m, n, k)))
        out.append(("IBS2", (k,), LogIntegralParams(a + 2, a, a, k, k, 2), ibs2(m, n, k)))
    for k in range(m - 1):
        for j in range(m - k - 1):
            hi = j + k + 1
            pa = LogIntegralParams(a + 1, a, a, j, hi, 1)
            pb = LogIntegralParams(a + 2, a, a, j, hi, 2)
            if k == 0:
                out.append(("IBS3", (j,), pa, ibs3(m, n, j)))
                out.append(("IBS5", (j,), pb, ibs5(m, n, j)))
            else:
                out.append(("IBS4", (j, k), pa, ibs4(m, n, j, k)))
                if k == 1:
                    out.append(("IBS6", (j,), pb, ibs6(m, n, j)))
                else:
                    out.append(("IBS7", (j, k), pb, ibs7(m, n, j, k)))
    return out


# ---------------------------------------------------------------------------
# finite-sum assemblies


def _a_offdiag(m: int, n: int, lo: int, hi: int) -> PolyValue:
    """A_{lo,hi}^{(a,a)}(a+1) for lo < hi."""
    gap = hi - lo - 1
    return ibs3(m, n, lo) if gap == 0 else ibs4(m, n, lo, gap)


def _b_offdiag(m: int, n: int, lo: int, hi: int) -> PolyValue:
    gap = hi - lo - 1
    if gap == 0:
        return ibs5(m, n, lo)
    if gap == 1:
        return ibs6(m, n, lo)
    return ibs7(m, n, lo, gap)


@lru_cache(maxsize=None)
def integral_IA(m: int, n: int) -> PolyValue:
    """int x^3 ln^3 x K(x, x) dx."""
    _check(m, n)
    c1, c2 = ias_blocks(m, n)
    return (c1 - c2) * F(fac(m), fac(n - 1))


@lru_cache(maxsize=None)
def integral_IB(m: int, n: int) -> PolyValue:
    """int int x^2 y ln^2 x ln y K(x, y)^2 dx dy."""
    _check(m, n)
    a = n - m
    total = PolyValue()
    for k in range(m):
        total = total + ibs1(m, n, k) * ibs2(m, n, k) * F(fac(k), fac(k + a)) ** 2
    for k in range(m - 1):
        for j in range(m - k - 1):
            hi = k + j + 1
            w = F(2 * fac(j) * fac(hi), fac(j + a) * fac(hi + a))
            total = total + _a_offdiag(m, n, j, hi) * _b_offdiag(m, n, j, hi) * w
    return total


@lru_cache(maxsize=None)
def integral_IC(m: int, n: int) -> PolyValue:
    """int int int xyz ln x ln y ln z K(x,y) K(y,z) K(z,x)."""
    _check(m, n)
    a = n - m
    # normalized A_{i,j} k! / (k+a)! factors, symmetric in (i, j)
    diag = [ibs1(m, n, k) * F(fac(k), fac(k + a)) for k in range(m)]
    off: Dict[Tuple[int, int], PolyValue] = {}
    for j in range(m):
        for i in range(j + 1, m):
            off[(j, i)] = _a_offdiag(m, n, j, i)

    def amat(i, j):
        return off[(min(i, j), max(i, j))]

    def norm(i):
        return F(fac(i), fac(i + a))

    total = PolyValue()
    for d in diag:
        total = total + d ** 3
    for j in range(m):
        for i in range(j + 1, m):
            total = total + amat(i, j) ** 2 * (diag[i] + diag[j]) * (3 * norm(i) * norm(j))
    for k in range(m):
        for j in range(k + 1, m):
            for i in range(j + 1, m):
                total = total + amat(i, j) * amat(j, k) * amat(k, i) * (6 * norm(i) * norm(j) * norm(k))
    return total


def integral_triple(m: int, n: int) -> Tuple[PolyValue, PolyValue, PolyValue]:
    return integral_IA(m, n), integral_IB(m, n), integral_IC(m, n)


def kappa3T_from_integrals(m: int, n: int) -> PolyValue:
    ia, ib, ic = integral_triple(m, n)
    return ia - ib * 3 + ic * 2


def kappa3T_closed(m: int, n: int) -> PolyValue:
    """Surviving-term form of the induced-entropy third cumulant."""
    _check(m, n)
    return (
        _p2(n) * (m * n * (m * m + 3 * m * n + n * n + 1))
        + _p0(n) * _p1(n) * (6 * m * n * (m + n))
        + _p1(n) * (m * (2 * m * m + 12 * m * n + 3 * m + 6 * n * n + 3 * n + 1))
        + _p0(n) ** 3 * (2 * m * n)
        + _p0(n) ** 2 * (3 * m * (m + 3 * n + 1))
        + _p0(n) * (6 * m * (m + n + 1))
        + m * (m + 1)
    )


# ---------------------------------------------------------------------------
# closed forms with coefficient tables


def basis_sums(m: int, n: int) -> Tuple[PolyValue, PolyValue, PolyValue]:
    """sum_{k=1}^m psi0(k+n-m)/k, psi0^2(k+n-m)/k, psi1(k+n-m)/k (requires m < n)."""
    if m >= n:
        raise ValueError("basis sums need m < n")
    s1, s2, s3 = PolyValue(), PolyValue(), PolyValue()
    a = n - m
    for k in range(1, m + 1):
        p = _p0(k + a)
        s1 = s1 + p / k
        s2 = s2 + p * p / k
        s3 = s3 + _p1(k + a) / k
    return s1, s2, s3


def _common(m, n):
    return m * m + 3 * m * n + n * n + 1


def table_a(m: int, n: int) -> List:
    """a_1 .. a_18 (index 0 unused). a_17 carries polygamma terms of its own."""
    c = _common(m, n)
    quartic = m ** 3 + 28 * m * m * n + 6 * m * m + 30 * m * n * n + 18 * m * n + 11 * m + 6 * n * n + 26 * n + 6
    a = [None] * 19
    a[1] = F(m, 288) * (37 * m ** 3 + 4012 * m * m * n - 30 * m * m + 4410 * m * n * n - 330 * m * n - 169 * m
                        + 84 * n ** 3 - 30 * n * n - 250 * n + 162)
    a[2] = -F(n, 24) * (12 * m ** 3 + 414 * m * m * n - 6 * m * m + 364 * m * n * n + 6 * m * n - 94 * m + 7 * n ** 3
                        - 6 * n * n - 67 * n + 90)
    a[3] = -F(1, 24) * (7 * m ** 4 + 352 * m ** 3 * n + 18 * m ** 3 + 336 * m * m * n + 5 * m * m - 352 * m * n ** 3
                        + 360 * m * n * n + 216 * m * n + 42 * m - 7 * n ** 4 + 6 * n ** 3 + 139 * n * n + 222 * n + 72)
    a[4] = F(m, 2) * quartic
    a[5] = -F(m, 2) * quartic
    a[6] = F(n, 2) * (30 * m * m * n - 18 * m * m + 28 * m * n * n - 54 * m * n + 26 * m + n ** 3 - 18 * n * n + 11 * n - 18)
    a[7] = F(1, 4) * (m ** 4 + 28 * m ** 3 * n + 6 * m ** 3 - 30 * m * m * n * n + 6 * m * m * n + 11 * m * m
                      - 56 * m * n ** 3 - 30 * m * n * n - 26 * m * n + 6 * m - 2 * n ** 4 - 12 * n ** 3 - 22 * n * n - 12 * n)
    a[8] = 6 * m * n * c
    a[9] = 6 * m * n * c
    a[10] = -6 * m * n * c
    a[11] = -6 * m * n * c
    a[12] = 3 * m * n * c
    a[13] = -2 * m * n * c
    a[14] = F(m, 4) * quartic
    a[15] = 3 * m * n * c
    a[16] = m * n * c
    a[17] = (_p0(n) * (12 * n * c) + _p0(n - m) * (24 * n * c) + quartic) * F(m, 2)
    a[18] = -6 * m * n * c
    return a


def table_b(m: int, n: int) -> List:
    """b_1 .. b_25 (index 0 unused). b_23 carries polygamma terms of its own."""
    c = _common(m, n)
    quartic = 3 * m ** 3 + 84 * m * m * n + 10 * m * m + 90 * m * n * n + 6 * m * n + 21 * m - 6 * n * n + 66 * n + 14
    mixed = 3 * m * m + 9 * m * n - 2 * m + 3 * n * n - 2 * n + 3
    b = [None] * 26
    b[1] = F(m, 864) * (111 * m ** 3 + 12036 * m * m * n + 2198 * m * m + 13230 * m * n * n + 4530 * m * n + 1629 * m
                        + 252 * n ** 3 + 150 * n * n - 414 * n - 194)
    b[2] = -F(1, 72) * (36 * m ** 3 * n + 1242 * m * m * n * n + 174 * m * m * n + 72 * m * m + 1092 * m * n ** 3
                        + 690 * m * n * n - 234 * m * n + 168 * m + 21 * n ** 4 + 14 * n ** 3 - 321 * n * n + 358 * n + 24)
    b[3] = -F(1, 72) * (21 * m ** 4 + 1056 * m ** 3 * n + 230 * m ** 3 + 864 * m * m * n + 255 * m * m
                        - 1056 * m * n ** 3 + 360 * m * n * n + 216 * m * n + 94 * m - 21 * n ** 4 - 14 * n ** 3
                        + 249 * n * n + 434 * n + 144)
    b[4] = F(m, 6) * quartic
    b[5] = -F(m, 6) * quartic
    b[6] = -F(2 * n, 3) * (3 * m * m + 12 * m * n - 3 * m + n * n - 3 * n + 2)
    b[7] = F(1, 6) * (-12 * m ** 3 + 90 * m * m * n * n - 138 * m * m * n - 24 * m * m + 84 * m * n ** 3
                      - 150 * m * n * n + 66 * m * n - 12 * m + 3 * n ** 4 - 50 * n ** 3 + 45 * n * n - 46 * n)
    b[8] = F(1, 12) * (3 * m ** 4 + 84 * m ** 3 * n + 26 * m ** 3 - 90 * m * m * n * n + 66 * m * m * n + 45 * m * m
                       - 168 * m * n ** 3 - 66 * m * n * n - 66 * m * n + 22 * m - 6 * n ** 4 - 36 * n ** 3
                       - 66 * n * n - 36 * n)
    b[9] = 2 * m * n * mixed
    b[10] = 6 * m * n * c
    b[11] = -2 * m * n * mixed
    b[12] = -4 * m * n * (m + n)
    b[13] = -6 * m * n * c
    b[14] = m * n * (3 * m * m + 9 * m * n + 2 * m + 3 * n * n + 2 * n + 3)
    b[15] = -2 * m * n * c
    b[16] = -F(n, 6) * (30 * m * m * n - 6 * m * m + 28 * m * n * n - 18 * m * n + 26 * m + n ** 3 - 6 * n * n + 11 * n - 6)
    b[17] = -2 * m * n * c
    b[18] = F(1, 12) * (m ** 4 + 28 * m ** 3 * n - 2 * m ** 3 + 90 * m * m * n * n - 18 * m * m * n - m * m
                        + 56 * m * n ** 3 + 18 * m * n * n + 66 * m * n + 2 * m + 2 * n ** 4 + 12 * n ** 3
                        + 22 * n * n + 12 * n)
    b[19] = -2 * m * n * c
    b[20] = 2 * m * n * c
    b[21] = m * n * (m * m + 3 * m * n - 2 * m + n * n - 2 * n + 1)
    b[22] = 2 * m * n * c
    b[23] = (_p0(n) * (12 * n * mixed) + _p0(n - m) * (72 * n * c) + quartic) * F(m, 6)
    b[24] = -6 * m * n * c
    b[25] = -2 * m * n * c
    return b


def table_c(m: int, n: int) -> List:
    """c_1 .. c_29 (index 0 unused). c_27 carries polygamma terms of its own."""
    c = _common(m, n)
    quartic = m ** 3 + 28 * m * m * n + 2 * m * m + 30 * m * n * n - 6 * m * n + 5 * m - 6 * n * n + 20 * n + 4
    shifted = m * m + 3 * m * n - m + n * n - n + 1
    t = [None] * 30
    t[1] = F(m, 288) * (37 * m ** 3 + 4012 * m * m * n + 1114 * m * m + 4410 * m * n * n + 2430 * m * n + 1043 * m
                        + 84 * n ** 3 + 90 * n * n - 82 * n - 34)
    t[2] = -F(1, 24) * (12 * m ** 3 * n + 414 * m * m * n * n + 90 * m * m * n - 36 * m * m + 364 * m * n ** 3
                        + 342 * m * n * n - 142 * m * n + 12 * m + 7 * n ** 4 + 10 * n ** 3 - 127 * n * n + 134 * n + 12)
    t[3] = -F(1, 24) * (7 * m ** 4 + 352 * m ** 3 * n + 106 * m ** 3 + 264 * m * m * n + 125 * m * m
                        - 352 * m * n ** 3 + 26 * m - 7 * n ** 4 - 10 * n ** 3 + 55 * n * n
                        + 106 * n + 36)
    t[4] = F(m, 2) * quartic
    t[5] = -F(m, 2) * quartic
    t[6] = F(1, 2) * (-6 * m * m * n + 3 * m * m - 24 * m * n * n + 15 * m * n + 3 * m - 2 * n ** 3 + 6 * n * n - 4 * n)
    t[7] = -F(1, 2) * (6 * m ** 3 - 30 * m * m * n * n + 60 * m * m * n + 12 * m * m - 28 * m * n ** 3
                       + 48 * m * n * n - 20 * m * n + 6 * m - n ** 4 + 16 * n ** 3 - 17 * n * n + 14 * n)
    t[8] = F(1, 4) * (m ** 4 + 28 * m ** 3 * n + 10 * m ** 3 - 30 * m * m * n * n + 30 * m * m * n + 17 * m * m
                      - 56 * m * n ** 3 - 18 * m * n * n - 20 * m * n + 8 * m - 2 * n ** 4 - 12 * n ** 3
                      - 22 * n * n - 12 * n)
    t[9] = 6 * m * n * shifted
    t[10] = -6 * m * n * shifted
    t[11] = m * n
    t[12] = -6 * m * n * (m + n)
    t[13] = 6 * m * n * c
    t[14] = -6 * m * n * c
    t[15] = 3 * m * n * (m * m + 3 * m * n + m + n * n + n + 1)
    t[16] = -2 * m * n * c
    t[17] = F(1, 4) * (4 * m ** 3 - 30 * m * m * n * n + 30 * m * m * n + 6 * m * m - 28 * m * n ** 3
                       + 30 * m * n * n - 20 * m * n + 2 * m - n ** 4 + 6 * n ** 3 - 11 * n * n + 6 * n)
    t[18] = 3 * m * n * (m + n)
    t[19] = -3 * m * n * c
    t[20] = F(1, 4) * (-4 * m ** 3 + 30 * m * m * n * n - 18 * m * m * n - 6 * m * m + 28 * m * n ** 3
                       + 6 * m * n * n + 20 * m * n - 2 * m + n ** 4 + 6 * n ** 3 + 11 * n * n + 6 * n)
    t[21] = -3 * m * n * c
    t[22] = 3 * m * n * c
    t[23] = -3 * m * n * (m + n)
    t[24] = 3 * m * n * c
    t[25] = F(m * n, 2) * c
    t[26] = -F(m * n, 2) * c
    t[27] = (_p0(n) * (12 * n * shifted) + _p0(n - m) * (24 * n * c) + quartic) * F(m, 2)
    t[28] = -6 * m * n * c
    t[29] = -3 * m * n * c
    return t


def _require_strict(m: int, n: int) -> None:
    _check(m, n)
    if m == n:
        raise ValueError("closed forms contain psi_j(n-m) and are indeterminate at m = n")


def _collect(coeffs, monomials) -> PolyValue:
    total = PolyValue()
    for coef, mono in zip(coeffs, monomials):
        total = total + mono * coef
    return total


def closed_IA(m: int, n: int) -> PolyValue:
    _require_strict(m, n)
    a = table_a(m, n)
    g1, gm, gn, gd = _p0(1), _p0(m), _p0(n), _p0(n - m)
    s1, s2, _ = basis_sums(m, n)
    mono = [
        PolyValue.const(1), gn, gd, g1 * gd, gm * gd, gn * gd, gd * gd, g1 * gn * gd, g1 * gd * gd,
        gm * gn * gd, gm * gd * gd, gn * gd * gd, gd ** 3, _p1(n - m), gn * _p1(n - m), _p2(n - m), s1, s2,
    ]
    return _collect(a[1:], mono)


def closed_IB(m: int, n: int) -> PolyValue:
    _require_strict(m, n)
    b = table_b(m, n)
    g1, gm, gn, gd = _p0(1), _p0(m), _p0(n), _p0(n - m)
    t1n, t1d = _p1(n), _p1(n - m)
    s1, s2, s3 = basis_sums(m, n)
    mono = [
        PolyValue.const(1), gn, gd, g1 * gd, gm * gd, gn * gn, gn * gd, gd * gd, g1 * gn * gd, g1 * gd * gd,
        gm * gn * gd, gn * gn * gd, gm * gd * gd, gn * gd * gd, gd ** 3, t1n, gd * t1n, t1d, g1 * t1d,
        gm * t1d, gn * t1d, gd * t1d, s1, s2, s3,
    ]
    return _collect(b[1:], mono)


def closed_IC(m: int, n: int) -> PolyValue:
    _require_strict(m, n)
    c = table_c(m, n)
    g1, gm, gn, gd = _p0(1), _p0(m), _p0(n), _p0(n - m)
    t1n, t1d = _p1(n), _p1(n - m)
    s1, s2, s3 = basis_sums(m, n)
    mono = [
        PolyValue.const(1), gn, gd, g1 * gd, gm * gd, gn * gn, gn * gd, gd * gd, g1 * gn * gd, gm * gn * gd,
        gn ** 3, gn * gn * gd, g1 * gd * gd, gm * gd * gd, gn * gd * gd, gd ** 3, t1n, gn * t1n, gd * t1n,
        t1d, g1 * t1d, gm * t1d, gn * t1d, gd * t1d, _p2(n), _p2(n - m), s1, s2, s3,
    ]
    return _collect(c[1:], mono)


def surviving_combination(m: int, n: int) -> PolyValue:
    """I_A - 3 I_B + 2 I_C assembled only from the coefficients that survive cancellation."""
    _check(m, n)
    a, b, c = table_a(m, n), table_b(m, n), table_c(m, n)
    gn = _p0(n)
    return (
        _p2(n) * (2 * c[25])
        + gn * _p1(n) * (2 * c[18])
        + _p1(n) * (2 * c[17] - 3 * b[16])
        + gn ** 3 * (2 * c[11])
        + gn ** 2 * (2 * c[6] - 3 * b[6])
        + gn * (a[2] - 3 * b[2] + 2 * c[2])
        + (a[1] - 3 * b[1] + 2 * c[1])
    )
