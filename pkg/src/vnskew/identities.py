"""Finite polygamma summation identities and a sweep engine that checks them.

Two families are covered.

First type: sum_{k=1}^n k^c prod_l psi_{j_l}(k + a_l)^{b_l}, with closed or
semi closed right-hand sides indexed A2..A29.

Second type: sum_{k=1}^m (n-k)!/(m-k)! f(k), indexed B2..B11.

Three auxiliary relations (M1 pair sums, M2 their diagonal limit, M3 the
psi0^2 + psi1 pairing) complete the registry.

Right-hand sides are written against an abstract ``psi(j, x)`` and
``fac(x)`` so the same code runs exactly (PolyValue) or in floating point
with real parameters.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .exact import PolyValue, psi_int, psi_real

F = Fraction


def _exact_psi(j, x):
    return psi_int(j, x)


def _exact_fac(x):
    return math.factorial(x)


def _real_fac(x):
    return math.gamma(x + 1)


@dataclass(frozen=True)
class FirstTypeSpec:
    """sum_{k=1}^n k^c prod (psi_j(k + shift))^exponent."""

    c: int
    factors: Tuple[Tuple[int, int, int], ...]
    n: int


@dataclass(frozen=True)
class SecondTypeSpec:
    m: int
    n: int
    test_function_id: str
    a: int = 0


def sum_type1_bruteforce(spec: FirstTypeSpec, psi=_exact_psi):
    total = PolyValue() if psi is _exact_psi else 0.0
    for k in range(1, spec.n + 1):
        term = k ** spec.c
        for j, shift, b in spec.factors:
            if shift < 0:
                raise ValueError("shifts must be non-negative")
            term = psi(j, k + shift) ** b * term
        total = total + term
    return total


# test functions f(k) for the second type, keyed by identity id
def _tf(identity_id: str, psi, n, a):
    table = {
        "B2": lambda k: 1,
        "B3": lambda k: F(1, k),
        "B4": lambda k: psi(0, k),
        "B5": lambda k: psi(0, k) * F(1, k),
        "B6": lambda k: psi(0, n + 1 - k) * F(1, k),
        "B7": lambda k: F(1, k + a) if isinstance(a, int) else 1.0 / (k + a),
        "B8": lambda k: F(1, k * k),
        "B9": lambda k: psi(0, k) * F(1, k * k),
        "B10": lambda k: psi(0, n + 1 - k) * F(1, k * k),
        "B11": lambda k: psi(1, k),
    }
    return table[identity_id]


def kernel_weights(m: int, n) -> List:
    """(n-k)!/(m-k)! for k = 1..m, built from k = m downward by one multiplication each."""
    if isinstance(n, int):
        w = math.factorial(n - m)
        out = [w]
        for k in range(m, 1, -1):
            w = w * (n - k + 1) // (m - k + 1)
            out.append(w)
    else:
        w = math.exp(math.lgamma(n - m + 1))
        out = [w]
        for k in range(m, 1, -1):
            w = w * (n - k + 1) / (m - k + 1)
            out.append(w)
    out.reverse()
    return out


def sum_type2_bruteforce(spec: SecondTypeSpec, psi=_exact_psi):
    if spec.m > spec.n:
        raise ValueError("second-type sums need m <= n")
    f = _tf(spec.test_function_id, psi, spec.n, spec.a)
    total = PolyValue() if psi is _exact_psi else 0.0
    for k, w in zip(range(1, spec.m + 1), kernel_weights(spec.m, spec.n)):
        total = total + f(k) * w
    return total


# ---------------------------------------------------------------------------
# first-type right-hand sides; P(j, x) is psi_j(x)


def _a_rhs(identity_id: str) -> Callable:
    return _A_RHS[identity_id]


def _rhs_a2(n, a, P):
    return (a + n) * P(0, a + n + 1) - a * P(0, a + 1) - n


def _rhs_a3(n, a, P):
    return (F(1, 2) * (-a * a + a + n * n + n) * P(0, a + n + 1) + F(1, 2) * (a - 1) * a * P(0, a + 1)
            + F(1, 4) * n * (2 * a - n - 3))


def _rhs_a4(n, a, P):
    return (F(1, 6) * (2 * a ** 3 - 3 * a * a + a + 2 * n ** 3 + 3 * n * n + n) * P(0, a + n + 1)
            - F(1, 6) * a * (2 * a * a - 3 * a + 1) * P(0, a + 1)
            - F(1, 36) * n * (12 * a * a - 6 * a * n - 24 * a + 4 * n * n + 15 * n + 17))


def _rhs_a5(n, a, P):
    return (-F(1, 4) * (a ** 4 - 2 * a ** 3 + a * a - n ** 4 - 2 * n ** 3 - n * n) * P(0, a + n + 1)
            + F(1, 4) * (a - 1) ** 2 * a * a * P(0, a + 1)
            - F(1, 48) * n * (-12 * a ** 3 + 6 * a * a * n + 30 * a * a - 4 * a * n * n - 18 * a * n - 26 * a
                              + 3 * n ** 3 + 14 * n * n + 21 * n + 10))


def _rhs_a6(n, a, P):
    return ((a + n) * P(0, a + n + 1) ** 2 - (2 * a + 2 * n + 1) * P(0, a + n + 1) - a * P(0, a + 1) ** 2
            + (2 * a + 1) * P(0, a + 1) + 2 * n)


def _rhs_a7(n, a, P):
    return (F(1, 2) * (-a * a + a + n * n + n) * P(0, a + n + 1) ** 2
            + F(1, 4) * (6 * a * a + 4 * a * n - 2 * a - 2 * n * n - 6 * n - 2) * P(0, a + n + 1)
            + F(1, 2) * (a - 1) * a * P(0, a + 1) ** 2 + F(1, 4) * (-6 * a * a + 2 * a + 2) * P(0, a + 1)
            + F(1, 4) * n * (-6 * a + n + 5))


def _rhs_a8(n, a, P):
    return (F(1, 6) * (2 * a ** 3 - 3 * a * a + a + 2 * n ** 3 + 3 * n * n + n) * P(0, a + n + 1) ** 2
            - F(1, 18) * (22 * a ** 3 + 12 * a * a * n - 21 * a * a - 6 * a * n * n - 24 * a * n - a + 4 * n ** 3
                          + 15 * n * n + 17 * n + 3) * P(0, a + n + 1)
            - F(1, 6) * a * (2 * a * a - 3 * a + 1) * P(0, a + 1) ** 2
            + F(1, 18) * (22 * a ** 3 - 21 * a * a - a + 3) * P(0, a + 1)
            + F(1, 108) * n * (132 * a * a - 30 * a * n - 192 * a + 8 * n * n + 39 * n + 79))


def _rhs_a9(n, a, P):
    return (-F(1, 4) * (a ** 4 - 2 * a ** 3 + a * a - n ** 4 - 2 * n ** 3 - n * n) * P(0, a + n + 1) ** 2
            + F(1, 24) * (25 * a ** 4 + 12 * a ** 3 * n - 38 * a ** 3 - 6 * a * a * n * n - 30 * a * a * n + 11 * a * a
                          + 4 * a * n ** 3 + 18 * a * n * n + 26 * a * n + 2 * a - 3 * n ** 4 - 14 * n ** 3
                          - 21 * n * n - 10 * n) * P(0, a + n + 1)
            + F(1, 4) * (a - 1) ** 2 * a * a * P(0, a + 1) ** 2
            - F(1, 24) * a * (25 * a ** 3 - 38 * a * a + 11 * a + 2) * P(0, a + 1)
            + F(1, 288) * n * (-300 * a ** 3 + 78 * a * a * n + 606 * a * a - 28 * a * n * n - 162 * a * n - 410 * a
                               + 9 * n ** 3 + 50 * n * n + 111 * n + 118))


def _rhs_a10(n, a, P):
    N1, A1 = a + n + 1, a + 1
    return (-F(1, 2) * P(1, N1) + F(1, 2) * P(1, A1) + (a + n) * P(0, N1) ** 3
            - F(3, 2) * (2 * a + 2 * n + 1) * P(0, N1) ** 2 + 3 * (2 * a + 2 * n + 1) * P(0, N1)
            - a * P(0, A1) ** 3 + F(3, 2) * (2 * a + 1) * P(0, A1) ** 2 - 3 * (2 * a + 1) * P(0, A1) - 6 * n)


def _rhs_a11(n, a, P):
    N1, A1 = a + n + 1, a + 1
    return (F(1, 4) * (2 * a - 1) * P(1, N1) + F(1, 4) * (-2 * a + 1) * P(1, A1)
            + F(1, 2) * (-a * a + a + n * n + n) * P(0, N1) ** 3
            + F(3, 4) * (3 * a * a + 2 * a * n - a - n * n - 3 * n - 1) * P(0, N1) ** 2
            + F(1, 8) * (-42 * a * a - 36 * a * n + 6 * a + 6 * n * n + 30 * n + 14) * P(0, N1)
            + F(1, 2) * (a - 1) * a * P(0, A1) ** 3 + F(3, 4) * (-3 * a * a + a + 1) * P(0, A1) ** 2
            + F(1, 4) * (21 * a * a - 3 * a - 7) * P(0, A1) + F(1, 8) * (42 * a * n - 3 * n * n - 27 * n))


def _rhs_a12(n, a, P):
    N1, A1 = a + n + 1, a + 1
    return (F(1, 12) * (-6 * a * a + 6 * a - 1) * P(1, N1) + F(1, 12) * (6 * a * a - 6 * a + 1) * P(1, A1)
            + F(1, 6) * (2 * a ** 3 - 3 * a * a + a + 2 * n ** 3 + 3 * n * n + n) * P(0, N1) ** 3
            - F(1, 12) * (22 * a ** 3 + 12 * a * a * n - 21 * a * a - 6 * a * n * n - 24 * a * n - a + 4 * n ** 3
                          + 15 * n * n + 17 * n + 3) * P(0, N1) ** 2
            + F(1, 36) * (170 * a ** 3 + 132 * a * a * n - 123 * a * a - 30 * a * n * n - 192 * a * n - 47 * a
                          + 8 * n ** 3 + 39 * n * n + 79 * n + 33) * P(0, N1)
            - F(1, 6) * a * (2 * a * a - 3 * a + 1) * P(0, A1) ** 3
            + F(1, 12) * (22 * a ** 3 - 21 * a * a - a + 3) * P(0, A1) ** 2
            - F(1, 36) * (170 * a ** 3 - 123 * a * a - 47 * a + 33) * P(0, A1)
            + F(1, 216) * (-1020 * a * a * n + 114 * a * n * n + 1248 * a * n - 16 * n ** 3 - 105 * n * n - 365 * n))


def _rhs_a13(n, a, P):
    N1, A1 = a + n + 1, a + 1
    return (F(1, 4) * a * (2 * a * a - 3 * a + 1) * P(1, N1) + F(1, 4) * a * (-2 * a * a + 3 * a - 1) * P(1, A1)
            - F(1, 4) * (a ** 4 - 2 * a ** 3 + a * a - n ** 4 - 2 * n ** 3 - n * n) * P(0, N1) ** 3
            + F(1, 16) * (25 * a ** 4 + 12 * a ** 3 * n - 38 * a ** 3 - 6 * a * a * n * n - 30 * a * a * n + 11 * a * a
                          + 4 * a * n ** 3 + 18 * a * n * n + 26 * a * n + 2 * a - 3 * n ** 4 - 14 * n ** 3
                          - 21 * n * n - 10 * n) * P(0, N1) ** 2
            - F(1, 96) * (415 * a ** 4 + 300 * a ** 3 * n - 530 * a ** 3 - 78 * a * a * n * n - 606 * a * a * n
                          + 17 * a * a + 28 * a * n ** 3 + 162 * a * n * n + 410 * a * n + 146 * a - 9 * n ** 4
                          - 50 * n ** 3 - 111 * n * n - 118 * n - 36) * P(0, N1)
            + F(1, 4) * (a - 1) ** 2 * a * a * P(0, A1) ** 3
            - F(1, 16) * a * (25 * a ** 3 - 38 * a * a + 11 * a + 2) * P(0, A1) ** 2
            + F(1, 96) * (415 * a ** 4 - 530 * a ** 3 + 17 * a * a + 146 * a - 36) * P(0, A1)
            + F(1, 1152) * (4980 * a ** 3 * n - 690 * a * a * n * n - 8850 * a * a * n + 148 * a * n ** 3
                            + 1134 * a * n * n + 4790 * a * n - 27 * n ** 4 - 182 * n ** 3 - 525 * n * n - 850 * n))


def _rhs_a14(n, a, P):
    return (a + n) * P(1, a + n + 1) - a * P(1, a + 1) + P(0, a + n + 1) - P(0, a + 1)


def _rhs_a15(n, a, P):
    N1, A1 = a + n + 1, a + 1
    return F(1, 2) * ((-a * a + a + n * n + n) * P(1, N1) + (a - 1) * a * P(1, A1) + (-2 * a + 1) * P(0, N1)
                      + (2 * a - 1) * P(0, A1) + n)


def _rhs_a16(n, a, P):
    N1, A1 = a + n + 1, a + 1
    return F(1, 6) * ((2 * a ** 3 - 3 * a * a + a + 2 * n ** 3 + 3 * n * n + n) * P(1, N1)
                      + a * (a - 1) * (-2 * a + 1) * P(1, A1) + (6 * a * a - 6 * a + 1) * P(0, N1)
                      + (-6 * a * a + 6 * a - 1) * P(0, A1) - 4 * a * n + n * n + 4 * n)


def _rhs_a17(n, a, P):
    N1, A1 = a + n + 1, a + 1
    return F(1, 24) * (6 * (-a ** 4 + 2 * a ** 3 - a * a + n ** 4 + 2 * n ** 3 + n * n) * P(1, N1)
                       + 6 * (a ** 4 - 2 * a ** 3 + a * a) * P(1, A1)
                       - 12 * a * (2 * a * a - 3 * a + 1) * P(0, N1) + 12 * a * (2 * a * a - 3 * a + 1) * P(0, A1)
                       + 18 * a * a * n - 6 * a * n * n - 30 * a * n + 2 * n ** 3 + 9 * n * n + 13 * n)


def _rhs_a18(n, a, P):
    return (a + n) * P(2, a + n + 1) - a * P(2, a + 1) + 2 * P(1, a + n + 1) - 2 * P(1, a + 1)


def _rhs_a19(n, a, P):
    N1, A1 = a + n + 1, a + 1
    return (F(1, 2) * (-a * a + a + n * n + n) * P(2, N1) + F(1, 2) * a * (a - 1) * P(2, A1)
            + (-2 * a + 1) * P(1, N1) + (2 * a - 1) * P(1, A1) - P(0, N1) + P(0, A1))


def _rhs_a20(n, a, P):
    N1, A1 = a + n + 1, a + 1
    return F(1, 6) * ((2 * a ** 3 - 3 * a * a + a + 2 * n ** 3 + 3 * n * n + n) * P(2, N1)
                      + a * (-2 * a * a + 3 * a - 1) * P(2, A1) + 2 * (6 * a * a - 6 * a + 1) * P(1, N1)
                      + 2 * (-6 * a * a + 6 * a - 1) * P(1, A1) + 6 * (2 * a - 1) * P(0, N1)
                      + 6 * (-2 * a + 1) * P(0, A1) - 4 * n)


def _rhs_a21(n, a, P):
    N1, A1 = a + n + 1, a + 1
    return F(1, 4) * ((-a ** 4 + 2 * a ** 3 - a * a + n ** 4 + 2 * n ** 3 + n * n) * P(2, N1)
                      + (a - 1) ** 2 * a * a * P(2, A1) + 4 * a * (-2 * a * a + 3 * a - 1) * P(1, N1)
                      + 4 * a * (2 * a * a - 3 * a + 1) * P(1, A1) - 2 * (6 * a * a - 6 * a + 1) * P(0, N1)
                      + 2 * (6 * a * a - 6 * a + 1) * P(0, A1) + 6 * a * n - n * n - 5 * n)


def _rhs_a22(n, a, P):
    N1, A1 = a + n + 1, a + 1
    return ((a + n) * P(0, N1) * P(1, N1) - a * P(0, A1) * P(1, A1) - F(1, 2) * (2 * a + 2 * n + 1) * P(1, N1)
            + F(1, 2) * (2 * a + 1) * P(1, A1) + F(1, 2) * P(0, N1) ** 2 - P(0, N1) - F(1, 2) * P(0, A1) ** 2
            + P(0, A1))


def _rhs_a23(n, a, P):
    N1, A1 = a + n + 1, a + 1
    return F(1, 4) * (2 * (-a * a + a + n * n + n) * P(0, N1) * P(1, N1) + 2 * (a - 1) * a * P(0, A1) * P(1, A1)
                      - (-3 * a * a - 2 * a * n + a + n * n + 3 * n + 1) * P(1, N1)
                      + (-3 * a * a + a + 1) * P(1, A1) + (1 - 2 * a) * P(0, N1) ** 2
                      + (6 * a + 2 * n - 1) * P(0, N1) + (2 * a - 1) * P(0, A1) ** 2 + (1 - 6 * a) * P(0, A1) - 3 * n)


def _rhs_a24(n, a, P):
    N1, A1 = a + n + 1, a + 1
    return F(1, 36) * (6 * (2 * a ** 3 - 3 * a * a + a + 2 * n ** 3 + 3 * n * n + n) * P(0, N1) * P(1, N1)
                       - 6 * a * (2 * a * a - 3 * a + 1) * P(0, A1) * P(1, A1)
                       + (-22 * a ** 3 - 12 * a * a * n + 21 * a * a + 6 * a * n * n + 24 * a * n + a - 4 * n ** 3
                          - 15 * n * n - 17 * n - 3) * P(1, N1)
                       + (22 * a ** 3 - 21 * a * a - a + 3) * P(1, A1)
                       + 3 * (6 * a * a - 6 * a + 1) * P(0, N1) ** 2
                       + (-66 * a * a - 24 * a * n + 42 * a + 6 * n * n + 24 * n + 1) * P(0, N1)
                       - 3 * (6 * a * a - 6 * a + 1) * P(0, A1) ** 2 - (-66 * a * a + 42 * a + 1) * P(0, A1)
                       + 44 * a * n - 5 * n * n - 32 * n)


def _rhs_a25(n, a, P):
    N1, A1 = a + n + 1, a + 1
    return F(1, 288) * (-72 * (a ** 4 - 2 * a ** 3 + a * a - n ** 4 - 2 * n ** 3 - n * n) * P(0, N1) * P(1, N1)
                        + 72 * (a - 1) ** 2 * a * a * P(0, A1) * P(1, A1)
                        + (150 * a ** 4 + 72 * a ** 3 * n - 228 * a ** 3 - 36 * a * a * n * n - 180 * a * a * n
                           + 66 * a * a + 24 * a * n ** 3 + 108 * a * n * n + 156 * a * n + 12 * a - 18 * n ** 4
                           - 84 * n ** 3 - 126 * n * n - 60 * n) * P(1, N1)
                        + (-150 * a ** 4 + 228 * a ** 3 - 66 * a * a - 12 * a) * P(1, A1)
                        - 72 * a * (2 * a * a - 3 * a + 1) * P(0, N1) ** 2
                        - 12 * (-50 * a ** 3 - 18 * a * a * n + 57 * a * a + 6 * a * n * n + 30 * a * n - 11 * a
                                - 2 * n ** 3 - 9 * n * n - 13 * n - 1) * P(0, N1)
                        + 72 * a * (2 * a * a - 3 * a + 1) * P(0, A1) ** 2
                        + 12 * (-50 * a ** 3 + 57 * a * a - 11 * a - 1) * P(0, A1)
                        - 450 * a * a * n + 78 * a * n * n + 606 * a * n - 14 * n ** 3 - 81 * n * n - 205 * n)


def residual_psi_over_shift(n, a, P):
    """sum_{k=1}^n psi0(k)/(k+a), the term left unsimplified in the semi closed forms."""
    total = 0
    for k in range(1, n + 1):
        total = P(0, k) * (F(1, k + a) if isinstance(a, int) else 1.0 / (k + a)) + total
    return total


def _rhs_a26(n, a, P):
    N1, A1 = a + n + 1, a + 1
    r = residual_psi_over_shift(n, a, P)
    return (a * r + n * P(0, N1) * P(0, n + 1) - (a + n + 1) * P(0, N1) - n * P(0, n + 1) + (a + 1) * P(0, A1)
            + 2 * n)


def _rhs_a27(n, a, P):
    N1, A1 = a + n + 1, a + 1
    r = residual_psi_over_shift(n, a, P)
    return (-F(a * (a - 1), 2) * r
            + F(1, 4) * (2 * n * (n + 1) * P(0, N1) * P(0, n + 1) + (a * a - a - n * n - 3 * n - 2) * P(0, N1)
                         + (2 * a - n - 3) * n * P(0, n + 1) - (a - 2) * (a + 1) * P(0, A1) - 3 * a * n + n * n
                         + 5 * n))


def _rhs_a28(n, a, P):
    N1, A1 = a + n + 1, a + 1
    r = residual_psi_over_shift(n, a, P)
    return (F(a * (a - 1) * (2 * a - 1), 6) * r
            + F(1, 108) * (18 * n * (n + 1) * (2 * n + 1) * P(0, N1) * P(0, n + 1)
                           - 3 * (4 * a ** 3 - 3 * a * a - a + 4 * n ** 3 + 15 * n * n + 17 * n + 6) * P(0, N1)
                           + 3 * n * (-12 * a * a + 6 * a * n + 24 * a - 4 * n * n - 15 * n - 17) * P(0, n + 1)
                           + 3 * (4 * a ** 3 - 3 * a * a - a + 6) * P(0, A1)
                           + n * (48 * a * a - 15 * a * n - 96 * a + 8 * n * n + 39 * n + 79)))


def _rhs_a29(n, a, P):
    N1, A1 = a + n + 1, a + 1
    r = residual_psi_over_shift(n, a, P)
    return (-F(a * a * (a - 1) ** 2, 4) * r
            + F(1, 288) * (72 * n * n * (n + 1) ** 2 * P(0, N1) * P(0, n + 1)
                           + 6 * (3 * a ** 4 - 2 * a ** 3 - 3 * a * a + 2 * a - 3 * n ** 4 - 14 * n ** 3 - 21 * n * n
                                  - 10 * n) * P(0, N1)
                           + 6 * n * (12 * a ** 3 - 6 * a * a * n - 30 * a * a + 4 * a * n * n + 18 * a * n + 26 * a
                                      - 3 * n ** 3 - 14 * n * n - 21 * n - 10) * P(0, n + 1)
                           - 6 * a * (a - 1) * (a + 1) * (3 * a - 2) * P(0, A1)
                           + n * (-90 * a ** 3 + 27 * a * a * n + 219 * a * a - 14 * a * n * n - 81 * a * n - 205 * a
                                  + 9 * n ** 3 + 50 * n * n + 111 * n + 118)))


_A_RHS = {f"A{i}": globals()[f"_rhs_a{i}"] for i in range(2, 30)}

# (c, factors) describing each left-hand side; the shift placeholder "a" is filled per grid point
_A_SHAPES: Dict[str, Tuple[int, Tuple[Tuple[int, str, int], ...]]] = {}
for _i, (_j, _b) in enumerate([(0, 1), (0, 2), (0, 3), (1, 1), (2, 1)]):
    for _c in range(4):
        _A_SHAPES[f"A{2 + 4 * _i + _c}"] = (_c, ((_j, "a", _b),))
for _c in range(4):
    _A_SHAPES[f"A{22 + _c}"] = (_c, ((0, "a", 1), (1, "a", 1)))
    _A_SHAPES[f"A{26 + _c}"] = (_c, ((0, "a", 1), (0, 0, 1)))
del _i, _j, _b, _c


def first_type_spec(identity_id: str, n: int, a: int) -> FirstTypeSpec:
    c, factors = _A_SHAPES[identity_id]
    return FirstTypeSpec(c, tuple((j, a if s == "a" else s, b) for j, s, b in factors), n)


def sum_type1_closed(identity_id: str, n: int, a: int, psi=_exact_psi):
    if identity_id not in _A_RHS or int(identity_id[1:]) > 25:
        raise ValueError(f"unknown closed-form identity {identity_id!r}")
    return _A_RHS[identity_id](n, a, psi)


def sum_type1_semi(identity_id: str, n: int, a: int, psi=_exact_psi):
    if identity_id not in ("A26", "A27", "A28", "A29"):
        raise ValueError(f"unknown semi closed-form identity {identity_id!r}")
    return _A_RHS[identity_id](n, a, psi)


# ---------------------------------------------------------------------------
# second-type right-hand sides


def basis_sum(m, n, P, kind: str):
    """sum_{k=1}^m g(k+n-m)/k for g in {psi0, psi0^2, psi1, psi0^2 + psi1}."""
    d = n - m
    total = 0
    for k in range(1, m + 1):
        x = k + d
        if kind == "p0":
            v = P(0, x)
        elif kind == "p0sq":
            v = P(0, x) ** 2
        elif kind == "p1":
            v = P(1, x)
        else:
            v = P(0, x) ** 2 + P(1, x)
        total = v * (F(1, k) if isinstance(m, int) else 1.0 / k) + total
    return total


def _rhs_b2(m, n, P, fac, a=0):
    return fac(n) / (fac(m - 1) * (n - m + 1)) if not isinstance(n, int) else F(fac(n), fac(m - 1) * (n - m + 1))


def _ratio(num, den):
    if isinstance(num, int) and isinstance(den, int):
        return F(num, den)
    return num / den


def _rhs_b3(m, n, P, fac, a=0):
    return _ratio(fac(n), fac(m)) * (P(0, n + 1) - P(0, n - m + 1))


def _rhs_b4(m, n, P, fac, a=0):
    d1 = n - m + 1
    return _ratio(fac(n), fac(m - 1) * d1) * (P(0, n + 1) - P(0, d1) + P(0, 1) - _ratio(1, d1))


def _rhs_b5(m, n, P, fac, a=0):
    d1 = n - m + 1
    return _ratio(fac(n), fac(m)) * (
        F(1, 2) * (P(1, n + 1) - P(1, d1) + P(0, n + 1) ** 2 + P(0, d1) ** 2)
        + P(0, 1) * (P(0, n + 1) - P(0, d1)) - P(0, n + 1) * P(0, d1)
    )


def _rhs_b6(m, n, P, fac, a=0):
    d1 = n - m + 1
    return _ratio(fac(n), fac(m)) * (P(1, n + 1) - P(1, d1) + P(0, n + 1) * (P(0, n + 1) - P(0, d1)))


def _rhs_b7(m, n, P, fac, a=0):
    d = n - m
    total = 0
    for k in range(1, m + 1):
        total = total + _ratio(fac(k + d - 1) * fac(k + a - 1), fac(k - 1) * fac(k + a + d))
    return _ratio(fac(a + n), fac(a + m)) * total


def _rhs_b8(m, n, P, fac, a=0):
    d = n - m
    r = _ratio(fac(n), fac(m))
    return r * basis_sum(m, n, P, "p0") + r * (
        F(1, 2) * (P(1, d + 1) - P(1, n + 1) + P(0, d + 1) ** 2 - P(0, n + 1) ** 2)
        + P(0, d) * (P(0, n + 1) - P(0, m + 1) - P(0, d + 1) + P(0, 1))
    )


def _rhs_b9(m, n, P, fac, a=0):
    d = n - m
    r = _ratio(fac(n), fac(m))
    half = r * F(1, 2)
    return (
        half * basis_sum(m, n, P, "pair")
        - r * (P(0, d) - P(0, 1)) * basis_sum(m, n, P, "p0")
        + half * (
            -F(1, 3) * (P(2, n + 1) - P(2, d + 1) + P(0, n + 1) ** 3 - P(0, d + 1) ** 3
                        + 3 * P(0, n + 1) * P(1, n + 1) - 3 * P(0, d + 1) * P(1, d + 1))
            + (P(0, d) - P(0, 1)) * (P(1, n + 1) - P(1, d + 1) + P(0, n + 1) ** 2 - P(0, d + 1) ** 2)
            - (P(1, d) - P(0, d) ** 2 + 2 * P(0, 1) * P(0, d)) * (P(0, m + 1) - P(0, n + 1) + P(0, d + 1) - P(0, 1))
        )
    )


def _rhs_b10(m, n, P, fac, a=0):
    d = n - m
    r = _ratio(fac(n), fac(m))
    return (
        r * (basis_sum(m, n, P, "p1") + P(0, n + 1) * basis_sum(m, n, P, "p0"))
        + r * (
            F(1, 2) * P(2, d + 1) - F(1, 2) * P(2, n + 1) + P(0, d + 1) * P(1, d + 1)
            + P(0, n + 1) * (
                F(1, 2) * (P(1, d + 1) - P(1, n + 1) + P(0, d + 1) ** 2 - P(0, n + 1) ** 2)
                + P(0, d) * (P(0, n + 1) - P(0, d + 1) - P(0, m + 1) + P(0, 1))
                + P(1, d) - P(1, n + 1)
            )
            - P(1, d) * (P(0, d + 1) + P(0, m + 1) - P(0, 1))
            + P(0, d) * (P(1, n + 1) - P(1, d + 1))
        )
    )


def _rhs_b11(m, n, P, fac, a=0):
    d = n - m
    r = _ratio(fac(n), fac(m - 1) * (d + 1))
    return -r * basis_sum(m, n, P, "p0") - r * (
        F(1, 2) * (P(1, d + 1) - P(1, n) - P(0, n) ** 2 + P(0, d + 1) ** 2)
        + P(0, d) * (P(0, n) - P(0, m) - P(0, d + 1) + P(0, 1))
        - P(1, 1)
        - (P(0, n) - P(0, d + 1)) * _ratio(1, n)
        - P(0, n) * _ratio(1, m)
    )


_B_RHS = {f"B{i}": globals()[f"_rhs_b{i}"] for i in range(2, 12)}
B_NEEDS_STRICT = frozenset({"B8", "B9", "B10", "B11"})


def sum_type2_closed(identity_id: str, m: int, n: int, psi=_exact_psi, fac=_exact_fac):
    if identity_id not in ("B2", "B3", "B4", "B5", "B6"):
        raise ValueError(f"unknown closed-form identity {identity_id!r}")
    _check_mn(identity_id, m, n)
    return _B_RHS[identity_id](m, n, psi, fac)


def sum_type2_semi(identity_id: str, m: int, n: int, a: int = 0, psi=_exact_psi, fac=_exact_fac):
    if identity_id not in ("B7", "B8", "B9", "B10", "B11"):
        raise ValueError(f"unknown semi closed-form identity {identity_id!r}")
    _check_mn(identity_id, m, n)
    return _B_RHS[identity_id](m, n, psi, fac, a)


def _check_mn(identity_id, m, n):
    if m < 1 or m > n:
        raise ValueError(f"need 1 <= m <= n, got ({m}, {n})")
    if identity_id in B_NEEDS_STRICT and m == n:
        raise ValueError(f"{identity_id} contains psi(n-m) and needs m < n")


# ---------------------------------------------------------------------------
# auxiliary pair identities


def milgram_identities(variant: str, m: int, a: int, b: Optional[int] = None, psi=_exact_psi):
    """Return (lhs, rhs) for the pair sum, its a -> b limit, or the psi0^2 + psi1 pairing."""
    P = psi
    if a < 0 or (b is not None and b < 0):
        raise ValueError("shifts must be non-negative")
    if variant == "pair":
        if b is None or a == b:
            raise ValueError("the pair variant needs two distinct shifts")
        lhs = sum((P(0, k + a) * F(1, k + b) + P(0, k + b) * F(1, k + a) for k in range(1, m + 1)), PolyValue())
        rhs = (P(0, a + m + 1) * P(0, b + m + 1) - P(0, a + 1) * P(0, b + 1)
               + F(1, a - b) * (P(0, a + m + 1) - P(0, b + m + 1) - P(0, a + 1) + P(0, b + 1)))
        return lhs, rhs
    if variant == "limit":
        lhs = sum((P(0, k + a) * F(1, k + a) for k in range(1, m + 1)), PolyValue())
        rhs = F(1, 2) * (P(1, a + m + 1) - P(1, a + 1) + P(0, a + m + 1) ** 2 - P(0, a + 1) ** 2)
        return lhs, rhs
    if variant == "squared_pair":
        lhs = sum(((P(0, k + a) ** 2 + P(1, k + a)) * F(1, k + a) for k in range(1, m + 1)), PolyValue())
        hi, lo = a + m + 1, a + 1
        rhs = F(1, 3) * (P(2, hi) - P(2, lo) + 3 * P(0, hi) * P(1, hi) - 3 * P(0, lo) * P(1, lo)
                         + P(0, hi) ** 3 - P(0, lo) ** 3)
        return lhs, rhs
    raise ValueError(f"unknown variant {variant!r}")


# ---------------------------------------------------------------------------
# registry and sweeps


@dataclass(frozen=True)
class Identity:
    identity_id: str
    family: str  # "first", "second", "aux"
    lhs: Callable
    rhs: Callable
    params: Tuple[str, ...]
    default_grid: Callable[[int, int], List[tuple]]
    description: str = ""


@dataclass
class IdentityReport:
    identity_id: str
    grid: dict
    passed: int = 0
    failed: int = 0
    counterexample: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self) -> dict:
        return {
            "identity_id": self.identity_id,
            "grid": self.grid,
            "pass": self.passed,
            "fail": self.failed,
            "counterexample": self.counterexample,
        }


def _first_grid(max_n: int = 25, max_a: int = 8):
    return [(n, a) for n in range(1, max_n + 1) for a in range(0, max_a + 1)]


def _second_grid(max_n: int = 25, strict: bool = False, with_a: bool = False, max_a: int = 8):
    pts = []
    for n in range(1, max_n + 1):
        for m in range(1, n + 1):
            if strict and m == n:
                continue
            if with_a:
                pts.extend((m, n, a) for a in range(0, max_a + 1))
            else:
                pts.append((m, n))
    return pts


def _aux_grid(max_m: int = 20, max_ab: int = 6, pair: bool = False):
    if pair:
        return [(m, a, b) for m in range(1, max_m + 1) for a in range(max_ab + 1) for b in range(max_ab + 1) if a != b]
    return [(m, a) for m in range(1, max_m + 1) for a in range(max_ab + 1)]


def _build_registry() -> Dict[str, Identity]:
    reg: Dict[str, Identity] = {}
    for i in range(2, 30):
        iid = f"A{i}"
        closed = sum_type1_closed if i <= 25 else sum_type1_semi
        reg[iid] = Identity(
            iid, "first",
            lhs=lambda n, a, _i=iid: sum_type1_bruteforce(first_type_spec(_i, n, a)),
            rhs=lambda n, a, _i=iid, _f=closed: _f(_i, n, a),
            params=("n", "a"),
            default_grid=lambda max_n=25, max_a=8: _first_grid(max_n, max_a),
            description="first-type sum, " + ("closed form" if i <= 25 else "semi closed form"),
        )
    for i in range(2, 12):
        iid = f"B{i}"
        if iid == "B7":
            reg[iid] = Identity(
                iid, "second",
                lhs=lambda m, n, a: sum_type2_bruteforce(SecondTypeSpec(m, n, "B7", a)),
                rhs=lambda m, n, a: sum_type2_semi("B7", m, n, a),
                params=("m", "n", "a"),
                default_grid=lambda max_n=25, max_a=8: _second_grid(max_n, with_a=True, max_a=max_a),
                description="second-type sum with shifted reciprocal",
            )
            continue
        strict = iid in B_NEEDS_STRICT
        closed = sum_type2_closed if i <= 6 else sum_type2_semi
        reg[iid] = Identity(
            iid, "second",
            lhs=lambda m, n, _i=iid: sum_type2_bruteforce(SecondTypeSpec(m, n, _i)),
            rhs=lambda m, n, _i=iid, _f=closed: _f(_i, m, n),
            params=("m", "n"),
            default_grid=lambda max_n=25, max_a=8, _s=strict: _second_grid(max_n, strict=_s),
            description="second-type sum, " + ("closed form" if i <= 6 else "semi closed form"),
        )
    reg["M1"] = Identity(
        "M1", "aux",
        lhs=lambda m, a, b: milgram_identities("pair", m, a, b)[0],
        rhs=lambda m, a, b: milgram_identities("pair", m, a, b)[1],
        params=("m", "a", "b"),
        default_grid=lambda max_m=20, max_ab=6: _aux_grid(max_m, max_ab, pair=True),
        description="paired reciprocal-shift digamma sum",
    )
    for iid, variant in (("M2", "limit"), ("M3", "squared_pair")):
        reg[iid] = Identity(
            iid, "aux",
            lhs=lambda m, a, _v=variant: milgram_identities(_v, m, a)[0],
            rhs=lambda m, a, _v=variant: milgram_identities(_v, m, a)[1],
            params=("m", "a"),
            default_grid=lambda max_m=20, max_ab=6: _aux_grid(max_m, max_ab),
            description=f"{variant} digamma sum",
        )
    return reg


REGISTRY: Dict[str, Identity] = _build_registry()


def identity_ids() -> List[str]:
    def key(s):
        return ("ABM".index(s[0]), int(s[1:]))

    return sorted(REGISTRY, key=key)


def default_grid(identity_id: str, max_n: Optional[int] = None, max_m: Optional[int] = None) -> List[tuple]:
    ident = REGISTRY[identity_id]
    if ident.family == "aux":
        return ident.default_grid(max_m or 20)
    return ident.default_grid(max_n or 25)


def verify_range(
    identity_id: str,
    grid: Optional[Sequence[tuple]] = None,
    rhs_override: Optional[Callable] = None,
) -> IdentityReport:
    """Compare right-hand side against brute force at every grid point, in order.

    ``rhs_override`` replaces the right-hand side; it exists so that a
    deliberately corrupted formula can be fed through the same harness.
    """
    if identity_id not in REGISTRY:
        raise ValueError(f"unknown identity {identity_id!r}")
    ident = REGISTRY[identity_id]
    points = list(grid) if grid is not None else default_grid(identity_id)
    if not points:
        raise ValueError("grid must be non-empty")
    rhs = rhs_override or ident.rhs
    report = IdentityReport(identity_id, _describe_grid(ident.params, points))
    for pt in points:
        left, right = ident.lhs(*pt), rhs(*pt)
        if PolyValue.coerce(left) == PolyValue.coerce(right):
            report.passed += 1
        else:
            report.failed += 1
            if report.counterexample is None:
                report.counterexample = {
                    "params": dict(zip(ident.params, pt)),
                    "lhs": str(PolyValue.coerce(left)),
                    "rhs": str(PolyValue.coerce(right)),
                }
    return report


def _describe_grid(params, points) -> dict:
    out = {"size": len(points)}
    for i, name in enumerate(params):
        vals = [p[i] for p in points]
        out[name] = [min(vals), max(vals)]
    return out


def verify_all(
    ids: Optional[Iterable[str]] = None,
    max_n: int = 25,
    max_m: int = 20,
    threads: int = 1,
) -> List[IdentityReport]:
    ids = list(ids) if ids is not None else identity_ids()

    def run(iid):
        return verify_range(iid, default_grid(iid, max_n=max_n, max_m=max_m))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(run, ids))
    else:
        reports = [run(i) for i in ids]
    order = {iid: k for k, iid in enumerate(identity_ids())}
    return sorted(reports, key=lambda r: order[r.identity_id])


def reports_to_json(reports: Sequence[IdentityReport]) -> str:
    return json.dumps([r.to_json() for r in reports], indent=2)


# ---------------------------------------------------------------------------
# floating-point checks for real parameters


def real_first_type(identity_id: str, n: int, a: float) -> Tuple[float, float]:
    """(brute force, right-hand side) in double precision for non-integer shift a."""
    spec_c, factors = _A_SHAPES[identity_id]
    lhs = 0.0
    for k in range(1, n + 1):
        term = float(k ** spec_c)
        for j, s, b in factors:
            term *= psi_real(j, k + (a if s == "a" else s)) ** b
        lhs += term
    return lhs, float(_A_RHS[identity_id](n, a, psi_real))


def real_second_type(identity_id: str, m: int, n: float) -> Tuple[float, float]:
    """(direct kernel sum, right-hand side) in double precision for non-integer n > m."""
    if identity_id not in ("B3", "B8"):
        raise ValueError("real-n checks cover B3 and B8")
    power = 1 if identity_id == "B3" else 2
    lhs = 0.0
    for k in range(1, m + 1):
        lhs += math.exp(math.lgamma(n - k + 1) - math.lgamma(m - k + 1)) / k ** power
    rhs = _B_RHS[identity_id](m, n, psi_real, _real_fac)
    return lhs, float(rhs)


def derivative_check(order: int, n: int, a: float, h: float = 1e-5) -> Tuple[float, float]:
    """Central difference in a of the psi0^2 closed form against twice the psi0*psi1 closed form.

    ``order`` is the power c of k in the summand, 0..3.
    """
    if order not in range(4):
        raise ValueError("order must be 0..3")
    sq, mixed = _A_RHS[f"A{6 + order}"], _A_RHS[f"A{22 + order}"]
    d = (float(sq(n, a + h, psi_real)) - float(sq(n, a - h, psi_real))) / (2 * h)
    return d, 2 * float(mixed(n, a, psi_real))
