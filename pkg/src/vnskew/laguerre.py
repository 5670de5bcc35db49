"""Laguerre polynomials, the Wishart correlation kernel and Schrödinger's integral.

The exact part evaluates

    int_0^inf x^q e^{-x} ln^d(x) L_s^(alpha)(x) L_t^(beta)(x) dx,   d = 0..3

as a finite sum over k.  When a polygamma argument in the log-derivative
sum is a non-positive integer, :func:`limit_schrodinger_log` shifts
``q -> q + eps`` and reads off the eps^0 coefficient of the Laurent series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .exact import (
    LaurentSeries,
    PolyValue,
    binom,
    gamma_shifted,
    psi_int,
    psi_shifted,
)


class IndeterminateError(ArithmeticError):
    """A polygamma argument hit a pole; use the eps-limit evaluator instead."""


class PoleResidueError(ArithmeticError):
    """Negative powers of eps survived the sum."""


class NonConvergenceError(ArithmeticError):
    """Quadrature did not settle when the node count was doubled."""


@dataclass(frozen=True)
class LogIntegralParams:
    q: int
    alpha: int
    beta: int
    s: int
    t: int
    d: int = 0

    def __post_init__(self):
        if self.d not in (0, 1, 2, 3):
            raise ValueError(f"log power must be 0..3, got {self.d}")
        if self.q < 0:
            raise ValueError(f"q must be non-negative, got {self.q}")


# ---------------------------------------------------------------------------
# polynomials, kernel, densities (floating point)


def laguerre(k: int, alpha: int, x):
    """Generalized Laguerre polynomial L_k^(alpha)(x) by the three-term recurrence."""
    if k < 0:
        raise ValueError("degree must be non-negative")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if k == 0:
        return prev if prev.ndim else float(prev)
    cur = alpha + 1.0 - x
    for j in range(1, k):
        prev, cur = cur, ((2 * j + 1 + alpha - x) * cur - (j + alpha) * prev) / (j + 1)
    return cur if cur.ndim else float(cur)


def laguerre_rational(k: int, alpha: int, x) -> Fraction:
    """Exact L_k^(alpha)(x) from the explicit sum, for rational x."""
    if k < 0:
        raise ValueError("degree must be non-negative")
    x = Fraction(x)
    total = Fraction(0)
    for i in range(k + 1):
        total += (-1) ** i * binom(alpha + k, k - i) * x ** i / math.factorial(i)
    return total


def kernel_sum(m: int, n: int, x, y):
    """Polynomial part sum_k k!/(a+k)! L_k^(a)(x) L_k^(a)(y) of the kernel, a = n - m."""
    _check_dims(m, n)
    a = n - m
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    total = np.zeros(np.broadcast(x, y).shape)
    for k in range(m):
        total = total + math.exp(math.lgamma(k + 1) - math.lgamma(a + k + 1)) * laguerre(k, a, x) * laguerre(k, a, y)
    return total


def kernel(m: int, n: int, x, y):
    """Correlation kernel K(x, y) of the m x m Wishart-Laguerre ensemble with n - m extra columns."""
    a = n - m
    total = kernel_sum(m, n, x, y)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    pref = np.exp(-(x + y) / 2 + a / 2 * (np.log(x) + np.log(y)))
    out = pref * total
    return out if out.ndim else float(out)


def g1_density(m: int, n: int, x):
    """One-eigenvalue marginal density in Christoffel-Darboux form (m >= 2)."""
    _check_dims(m, n)
    if m < 2:
        raise ValueError("Christoffel-Darboux form needs m >= 2; use kernel(...)/m")
    a = n - m + 1
    x = np.asarray(x, dtype=float)
    lead = math.exp(math.lgamma(m) - math.lgamma(n))
    body = laguerre(m - 1, a, x) ** 2 - laguerre(m - 2, a, x) * laguerre(m, a, x)
    out = lead * np.exp((n - m) * np.log(x) - x) * body
    return out if np.ndim(out) else float(out)


def npoint_density(m: int, n: int, points: Sequence[float]) -> float:
    """Joint density of N <= min(m, 3) unordered eigenvalues: (m-N)!/m! det K."""
    _check_dims(m, n)
    pts = [float(p) for p in points]
    big_n = len(pts)
    if big_n == 0 or big_n > 3:
        raise ValueError("between one and three points are supported")
    if big_n > m:
        raise ValueError(f"cannot ask for {big_n} eigenvalues out of {m}")
    mat = np.array([[kernel(m, n, xi, xj) for xj in pts] for xi in pts])
    return math.factorial(m - big_n) / math.factorial(m) * float(np.linalg.det(mat))


def _check_dims(m: int, n: int) -> None:
    if not (isinstance(m, int) and isinstance(n, int)) or m < 1 or m > n:
        raise ValueError(f"need integers 1 <= m <= n, got ({m}, {n})")


# ---------------------------------------------------------------------------
# Gauss-Laguerre quadrature


@lru_cache(maxsize=32)
def laguerre_nodes(count: int, alpha: float = 0.0):
    """Nodes and weights for int_0^inf x^alpha e^{-x} f(x) dx (Golub-Welsch)."""
    k = np.arange(count, dtype=float)
    diag = 2 * k + 1 + alpha
    off = np.sqrt(k[1:] * (k[1:] + alpha))
    nodes, vecs = eigh_tridiagonal(diag, off)
    weights = vecs[0] ** 2 * math.gamma(alpha + 1)
    return nodes, weights


def gauss_laguerre(
    f: Callable,
    nodes: int = 256,
    tol: float = 1e-8,
    alpha: float = 0.0,
    max_nodes: int = 1024,
) -> float:
    """int_0^inf x^alpha e^{-x} f(x) dx, doubling the node count until two rules agree.

    ``f`` receives the node array and must be vectorized.  The weight
    e^{-x} is applied by the rule, so ``f`` carries only the remaining factor.
    """
    prev = None
    count = nodes
    while count <= max_nodes:
        x, w = laguerre_nodes(count, alpha)
        val = float(np.dot(w, f(x)))
        if prev is not None and abs(val - prev) <= tol * max(1.0, abs(val)):
            return val
        prev = val
        count *= 2
    raise NonConvergenceError(f"Gauss-Laguerre did not settle to {tol} by {max_nodes} nodes")


def gauss_laguerre_2d(f: Callable, nodes: int = 96, tol: float = 1e-6, max_nodes: int = 384) -> float:
    """Tensor-product rule for int int e^{-x-y} f(x, y) dx dy."""
    prev = None
    count = nodes
    while count <= max_nodes:
        x, w = laguerre_nodes(count)
        xx, yy = np.meshgrid(x, x, indexing="ij")
        val = float(w @ f(xx, yy) @ w)
        if prev is not None and abs(val - prev) <= tol * max(1.0, abs(val)):
            return val
        prev = val
        count *= 2
    raise NonConvergenceError(f"2-D Gauss-Laguerre did not settle to {tol}")


# ---------------------------------------------------------------------------
# Schrödinger's integral, exact


def schrodinger(p: LogIntegralParams) -> Fraction:
    """int x^q e^{-x} L_s^(alpha) L_t^(beta) dx as an exact rational."""
    if p.d != 0:
        raise ValueError("schrodinger handles d = 0; use schrodinger_log")
    total = Fraction(0)
    for k in range(min(p.s, p.t) + 1):
        total += binom(p.q - p.alpha, p.s - k) * binom(p.q - p.beta, p.t - k) * Fraction(
            math.factorial(p.q + k), math.factorial(k)
        )
    return total * (-1) ** (p.s + p.t)


def _bell(psi: Sequence, d: int):
    if d == 1:
        return psi[0]
    if d == 2:
        return psi[0] * psi[0] + psi[1]
    return psi[0] * psi[0] * psi[0] + psi[0] * psi[1] * 3 + psi[2]


def _psi_arguments(p: LogIntegralParams, k: int):
    q, a, b = p.q, p.alpha, p.beta
    return (q + 1 + k, q - a + 1, q - b + 1), (q - a - p.s + 1 + k, q - b - p.t + 1 + k)


def schrodinger_log(p: LogIntegralParams) -> PolyValue:
    """Log-weighted Schrödinger integral for d = 1, 2, 3 when every polygamma argument is positive."""
    if p.d == 0:
        return PolyValue.const(schrodinger(p))
    total = PolyValue()
    for k in range(min(p.s, p.t) + 1):
        plus, minus = _psi_arguments(p, k)
        if min(plus + minus) <= 0:
            raise IndeterminateError(f"polygamma argument {min(plus + minus)} <= 0 at k={k} for {p}")
        weight = binom(p.q - p.alpha, p.s - k) * binom(p.q - p.beta, p.t - k)
        if not weight:
            continue
        psi = [
            sum((psi_int(j, x) for x in plus), PolyValue()) - sum((psi_int(j, x) for x in minus), PolyValue())
            for j in range(p.d)
        ]
        total = total + _bell(psi, p.d) * (weight * Fraction(math.factorial(p.q + k), math.factorial(k)))
    return total * (-1) ** (p.s + p.t)


def _falling_series(top: int, r: int) -> LaurentSeries:
    """C(top + eps, r) as an exact polynomial in eps."""
    if r < 0:
        return LaurentSeries({})
    coeffs = [Fraction(1, math.factorial(r))]
    for i in range(r):
        x = top - i
        new = [Fraction(0)] * (len(coeffs) + 1)
        for e, c in enumerate(coeffs):
            new[e] += c * x
            new[e + 1] += c
        coeffs = new
    return LaurentSeries(dict(enumerate(coeffs)))


_PSI_TRUNC = (2, 1, 0)


def _psi_sum(plus, minus, j: int) -> LaurentSeries:
    t = _PSI_TRUNC[j]
    out = LaurentSeries({}, t)
    for x in plus:
        out = out + psi_shifted(j, x, t)
    for x in minus:
        out = out - psi_shifted(j, x, t)
    return out


def limit_series(p: LogIntegralParams) -> LaurentSeries:
    """The full Laurent series in eps of the log-derivative sum with q -> q + eps."""
    if p.d == 0:
        return LaurentSeries.constant(schrodinger(p), 0)
    total = LaurentSeries({}, 0)
    for k in range(min(p.s, p.t) + 1):
        plus, minus = _psi_arguments(p, k)
        weight = _falling_series(p.q - p.alpha, p.s - k) * _falling_series(p.q - p.beta, p.t - k)
        if not weight.coefficients:
            continue
        psi = [_psi_sum(plus, minus, j) for j in range(p.d)]
        term = gamma_shifted(p.q + 1 + k, 3) * _bell(psi, p.d) * Fraction(1, math.factorial(k))
        total = total + weight * term
    return total * (-1) ** (p.s + p.t)


@lru_cache(maxsize=None)
def limit_schrodinger_log(p: LogIntegralParams) -> PolyValue:
    """eps^0 coefficient of :func:`limit_series`; raises if any pole survives."""
    series = limit_series(p)
    poles = series.poles()
    if poles:
        detail = ", ".join(f"eps^{k}: {v}" for k, v in sorted(poles.items()))
        raise PoleResidueError(f"non-zero pole coefficients for {p}: {detail}")
    return series.coeff(0)


def log_integral(p: LogIntegralParams) -> PolyValue:
    """Exact value, taking the eps-limit only when a polygamma argument is non-positive."""
    try:
        return schrodinger_log(p)
    except IndeterminateError:
        return limit_schrodinger_log(p)


def log_weighted_quadrature(g: Callable, q: int, d: int, nodes: int = 256, tol: float = 1e-8) -> float:
    """int_0^inf x^q ln^d(x) e^{-x} g(x) dx for smooth ``g``.

    A plain Gauss-Laguerre rule converges slowly because of the x^q ln^d x
    endpoint behaviour, so the line is split at 1.  On (0, 1) the
    substitution x = exp(-u/(q+1)) turns the piece into a Laguerre integral
    with a smooth integrand; on (1, inf) the shift x = 1 + y does the same.
    """
    c = q + 1.0

    def inner(v):
        x = np.exp(-v / c)
        return (-v / c) ** d * g(x) * np.exp(-x) / c

    def outer(y):
        x = 1.0 + y
        return x ** q * np.log1p(y) ** d * g(x) * math.exp(-1.0)

    return gauss_laguerre(inner, nodes=nodes, tol=tol) + gauss_laguerre(outer, nodes=nodes, tol=tol)


def log_integral_quadrature(p: LogIntegralParams, nodes: int = 256, tol: float = 1e-8) -> float:
    """Float oracle for the same integral by Gauss-Laguerre quadrature."""

    def g(x):
        return laguerre(p.s, p.alpha, x) * laguerre(p.t, p.beta, x)

    return log_weighted_quadrature(g, p.q, p.d, nodes=nodes, tol=tol)


def normalization(m: int, n: int, k: int) -> Fraction:
    """k!/(n-m+k)!, the weight of the k-th term in the kernel sum."""
    return Fraction(math.factorial(k), math.factorial(n - m + k))

