"""Exact polygamma arithmetic.

Values of polygamma functions at positive integers live in the ring
Q[g, z2, z3], where ``g`` is Euler's constant, ``z2 = zeta(2)`` and
``z3 = zeta(3)``.  The three constants are treated as algebraically
independent symbols, so equality of two :class:`PolyValue` objects is
coefficient-wise equality of rationals.

Poles at non-positive integers are handled with :class:`LaurentSeries`,
truncated power series in a formal ``eps`` whose coefficients are
``PolyValue`` objects.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

import mpmath

Monomial = Tuple[int, int, int]
Scalar = Union[int, Fraction]

EULER_GAMMA = 0.5772156649015329
ZETA2 = math.pi ** 2 / 6
ZETA3 = 1.2020569031595942

_SYMBOLS = ("g", "z2", "z3")
_WEIGHTS = (1, 2, 3)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class PolyValue:
    """Immutable polynomial in (g, z2, z3) with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Scalar]] = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                mono = tuple(int(e) for e in mono)
                if len(mono) != 3 or min(mono) < 0:
                    raise ValueError(f"bad monomial {mono!r}")
                c = _as_fraction(c)
                if c:
                    clean[mono] = clean.get(mono, Fraction(0)) + c
                    if not clean[mono]:
                        del clean[mono]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction]) -> "PolyValue":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: Scalar) -> "PolyValue":
        c = _as_fraction(c)
        return cls._raw({(0, 0, 0): c} if c else {})

    @staticmethod
    def coerce(x) -> "PolyValue":
        if isinstance(x, PolyValue):
            return x
        return PolyValue.const(x)

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def coeff(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(m == (0, 0, 0) for m in self._terms)

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational constant")
        return self.coeff((0, 0, 0))

    def weight(self) -> int:
        """Largest weight of a monomial, g=1, z2=2, z3=3; 0 for the zero value."""
        return max((sum(e * w for e, w in zip(m, _WEIGHTS)) for m in self._terms), default=0)

    # arithmetic

    def __add__(self, other):
        if isinstance(other, PolyValue):
            ot = other._terms
        elif isinstance(other, (int, Fraction)):
            if not other:
                return self
            ot = {(0, 0, 0): Fraction(other)}
        else:
            return NotImplemented
        out = dict(self._terms)
        for mono, c in ot.items():
            v = out.get(mono)
            if v is None:
                out[mono] = c
            else:
                v += c
                if v:
                    out[mono] = v
                else:
                    del out[mono]
        return PolyValue._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return PolyValue._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (PolyValue, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return PolyValue._raw({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, PolyValue):
            return NotImplemented
        out: Dict[Monomial, Fraction] = {}
        for (a1, b1, c1), x in self._terms.items():
            for (a2, b2, c2), y in other._terms.items():
                mono = (a1 + a2, b1 + b2, c1 + c2)
                v = out.get(mono)
                out[mono] = x * y if v is None else v + x * y
        return PolyValue._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("PolyValue division by zero")
            inv = 1 / Fraction(other)
            return PolyValue._raw({m: c * inv for m, c in self._terms.items()})
        if isinstance(other, PolyValue) and other.is_rational():
            return self / other.rational()
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, PolyValue):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({(0, 0, 0): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # numeric evaluation

    def to_mpf(self, dps: int = 50):
        with mpmath.workdps(dps):
            consts = (mpmath.euler, mpmath.zeta(2), mpmath.zeta(3))
            total = mpmath.mpf(0)
            for mono, c in self._terms.items():
                term = mpmath.mpf(c.numerator) / c.denominator
                for e, v in zip(mono, consts):
                    if e:
                        term *= v ** e
                total += term
            return +total

    def to_float(self) -> float:
        # high working precision: large rational parts often cancel against z3 terms
        if not self._terms:
            return 0.0
        return float(self.to_mpf())

    # formatting

    def _sorted_monomials(self):
        def key(m):
            return (-sum(e * w for e, w in zip(m, _WEIGHTS)), tuple(-e for e in m))

        return sorted(self._terms, key=key)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono in self._sorted_monomials():
            c = self._terms[mono]
            factors = []
            for sym, e in zip(_SYMBOLS, mono):
                if e == 1:
                    factors.append(sym)
                elif e > 1:
                    factors.append(f"{sym}^{e}")
            mag = abs(c)
            if factors:
                body = "*".join(factors) if mag == 1 else f"{mag}*" + "*".join(factors)
            else:
                body = str(mag)
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"PolyValue({str(self)!r})"

    _TERM_RE = re.compile(r"^(?:(\d+(?:/\d+)?)\*?)?((?:g|z2|z3)(?:\^\d+)?(?:\*(?:g|z2|z3)(?:\^\d+)?)*)?$")

    @classmethod
    def parse(cls, text: str) -> "PolyValue":
        """Inverse of ``str``: parses e.g. ``"-3*g + 65/12"``."""
        text = text.strip()
        if text == "0":
            return ZERO
        tokens = re.split(r"\s+([+-])\s+", text)
        signs = ["+"] + tokens[1::2]
        bodies = tokens[0::2]
        if bodies[0].startswith("-"):
            signs[0], bodies[0] = "-", bodies[0][1:]
        terms: Dict[Monomial, Fraction] = {}
        for sign, body in zip(signs, bodies):
            match = cls._TERM_RE.match(body)
            if not match or not body:
                raise ValueError(f"cannot parse term {body!r}")
            coef = Fraction(match.group(1)) if match.group(1) else Fraction(1)
            mono = [0, 0, 0]
            if match.group(2):
                for factor in match.group(2).split("*"):
                    sym, _, exp = factor.partition("^")
                    mono[_SYMBOLS.index(sym)] += int(exp) if exp else 1
            terms[tuple(mono)] = terms.get(tuple(mono), Fraction(0)) + (-coef if sign == "-" else coef)
        return cls(terms)

    def to_json(self) -> dict:
        return {
            "exact": str(self),
            "terms": [[list(m), str(self._terms[m])] for m in self._sorted_monomials()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PolyValue":
        return cls({tuple(m): Fraction(c) for m, c in data["terms"]})


ZERO = PolyValue()
ONE = PolyValue.const(1)
G = PolyValue({(1, 0, 0): 1})
Z2 = PolyValue({(0, 1, 0): 1})
Z3 = PolyValue({(0, 0, 1): 1})


def to_float(v) -> float:
    if isinstance(v, PolyValue):
        return v.to_float()
    return float(v)


# ---------------------------------------------------------------------------
# integer-argument polygamma


@lru_cache(maxsize=None)
def _harmonic_table(p: int) -> list:
    return [Fraction(0)]


def harmonic(l: int, p: int) -> Fraction:
    """Generalized harmonic number sum_{k=1}^{l-1} 1/k^p."""
    if not isinstance(l, int) or not isinstance(p, int) or l < 1 or p < 1:
        raise ValueError(f"harmonic needs integers l >= 1, p >= 1, got ({l}, {p})")
    table = _harmonic_table(p)
    while len(table) < l:
        k = len(table)
        table.append(table[-1] + Fraction(1, k ** p))
    return table[l - 1]


def bernoulli(n: int) -> Fraction:
    return _bernoulli_numbers(n)[n]


@lru_cache(maxsize=None)
def _bernoulli_numbers(n: int) -> tuple:
    b = [Fraction(0)] * (n + 1)
    b[0] = Fraction(1)
    for k in range(1, n + 1):
        b[k] = -sum(math.comb(k + 1, j) * b[j] for j in range(k)) / (k + 1)
    return tuple(b)


@lru_cache(maxsize=None)
def zeta_value(s: int) -> PolyValue:
    """zeta(s) in the symbol basis; zeta(1) stands in for Euler's g.

    Even values reduce to powers of z2; odd values above 3 have no
    representation and raise ``ValueError``.
    """
    if s == 1:
        return G
    if s == 2:
        return Z2
    if s == 3:
        return Z3
    if s % 2 == 0:
        k = s // 2
        # zeta(2k) = (-1)^(k+1) B_2k (2 pi)^2k / (2 (2k)!),  pi^2 = 6 z2
        c = (-1) ** (k + 1) * bernoulli(2 * k) * Fraction(4 * 6) ** k / (2 * math.factorial(2 * k))
        return Z2 ** k * c
    raise ValueError(f"zeta({s}) is outside the (g, z2, z3) basis")


@lru_cache(maxsize=None)
def psi_any(j: int, l: int) -> PolyValue:
    """psi_j(l) for any order j >= 0 whose zeta value is representable."""
    if l < 1:
        raise ValueError(f"psi_{j}({l}): argument must be a positive integer")
    if j == 0:
        return harmonic(l, 1) - G
    sign = (-1) ** (j + 1)
    return (zeta_value(j + 1) - harmonic(l, j + 1)) * (sign * math.factorial(j))


def psi_int(j: int, l: int) -> PolyValue:
    """Exact psi_j(l), j in {0, 1, 2}, l a positive integer."""
    if j not in (0, 1, 2):
        raise ValueError(f"order {j} not supported, expected 0, 1 or 2")
    if not isinstance(l, int) or l < 1:
        raise ValueError(f"psi_int needs a positive integer argument, got {l!r}; use psi_laurent")
    return psi_any(j, l)


def pochhammer(a: int, n: int) -> int:
    if n < 0:
        raise ValueError("pochhammer length must be non-negative")
    out = 1
    for i in range(n):
        out *= a + i
    return out


def falling(x: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= x - i
    return out


def binom(x: int, k: int) -> Fraction:
    """Binomial coefficient with arbitrary integer top, via the falling factorial."""
    if k < 0:
        return Fraction(0)
    return Fraction(falling(x, k), math.factorial(k))


# ---------------------------------------------------------------------------
# real-argument polygamma

_ASYMPTOTIC_TERMS = 7  # Bernoulli numbers B_2 .. B_14
_SHIFT_THRESHOLD = 12.0


def psi_real(j: int, x: float) -> float:
    """Double precision psi_j(x) for x > 0.

    Shifts the argument upward with the recurrence until it is at least
    12, then sums the asymptotic series through B_14.
    """
    if j < 0:
        raise ValueError("polygamma order must be non-negative")
    x = float(x)
    if not x > 0:
        raise ValueError(f"psi_real needs x > 0, got {x}")
    acc = 0.0
    fj = math.factorial(j)
    sign = -1.0 if j % 2 else 1.0  # psi_j(x+1) - psi_j(x) = (-1)^j j! / x^(j+1)
    while x < _SHIFT_THRESHOLD:
        acc -= sign * fj / x ** (j + 1)
        x += 1.0
    inv = 1.0 / x
    if j == 0:
        s = math.log(x) - 0.5 * inv
        for k in range(1, _ASYMPTOTIC_TERMS + 1):
            b = bernoulli(2 * k)
            s -= float(b) / (2 * k) * inv ** (2 * k)
    else:
        s = math.factorial(j - 1) * inv ** j + 0.5 * fj * inv ** (j + 1)
        for k in range(1, _ASYMPTOTIC_TERMS + 1):
            b = bernoulli(2 * k)
            s += float(b) * math.factorial(2 * k + j - 1) / math.factorial(2 * k) * inv ** (2 * k + j)
        if j % 2 == 0:
            s = -s
    return s + acc


# ---------------------------------------------------------------------------
# Laurent series in eps

LAURENT_FLOOR = -3


class LaurentSeries:
    """Truncated Laurent series sum_k c_k eps^k, valid through eps^trunc.

    ``trunc=None`` marks an exact finite series (a polynomial in eps).
    """

    __slots__ = ("_coeffs", "trunc")

    def __init__(self, coeffs: Mapping[int, object], trunc: Optional[int] = None):
        clean = {}
        for k, c in coeffs.items():
            if trunc is not None and k > trunc:
                continue
            c = PolyValue.coerce(c)
            if c:
                if k < LAURENT_FLOOR:
                    raise ValueError(f"power eps^{k} is below the eps^{LAURENT_FLOOR} floor")
                clean[int(k)] = c
        self._coeffs = clean
        self.trunc = trunc

    @classmethod
    def constant(cls, c, trunc: Optional[int] = None) -> "LaurentSeries":
        return cls({0: c}, trunc)

    @property
    def coefficients(self) -> Dict[int, PolyValue]:
        return dict(self._coeffs)

    def coeff(self, k: int) -> PolyValue:
        if self.trunc is not None and k > self.trunc:
            raise ValueError(f"eps^{k} is beyond the truncation order {self.trunc}")
        return self._coeffs.get(k, ZERO)

    def valuation(self) -> float:
        if self._coeffs:
            return min(self._coeffs)
        return math.inf if self.trunc is None else self.trunc + 1

    def poles(self) -> Dict[int, PolyValue]:
        return {k: c for k, c in self._coeffs.items() if k < 0}

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.constant(other)
        trunc = _min_trunc(self.trunc, other.trunc)
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out[k] + c if k in out else c
        return LaurentSeries(out, trunc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries({k: -c for k, c in self._coeffs.items()}, self.trunc)

    def __sub__(self, other):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PolyValue)):
            return LaurentSeries({k: c * other for k, c in self._coeffs.items()}, self.trunc)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        va, vb = self.valuation(), other.valuation()
        trunc = _min_trunc(
            None if self.trunc is None else self.trunc + vb,
            None if other.trunc is None else other.trunc + va,
        )
        if trunc is not None and trunc == math.inf:
            trunc = None
        if isinstance(trunc, float):
            trunc = int(trunc) if trunc != -math.inf else None
        out: Dict[int, PolyValue] = {}
        for i, x in self._coeffs.items():
            for k, y in other._coeffs.items():
                p = i + k
                if trunc is not None and p > trunc:
                    continue
                out[p] = out[p] + x * y if p in out else x * y
        return LaurentSeries(out, trunc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = LaurentSeries.constant(ONE)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.trunc == other.trunc and self._coeffs == other._coeffs

    def evaluate(self, eps, dps: int = 50):
        """Numeric value of the retained terms at ``eps`` as an mpmath number."""
        with mpmath.workdps(dps):
            e = mpmath.mpf(eps)
            return +sum((c.to_mpf(dps) * e ** k for k, c in self._coeffs.items()), mpmath.mpf(0))

    def __repr__(self):
        body = " + ".join(f"({c})*eps^{k}" for k, c in sorted(self._coeffs.items())) or "0"
        return f"LaurentSeries({body}; O(eps^{self.trunc + 1 if self.trunc is not None else 'inf'}))"


def _min_trunc(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _pole_coefficients(l: int, top: int) -> list:
    """c_r of psi_0(-l+eps) = -1/eps + sum_r c_r eps^r, for r = 0..top."""
    return [harmonic(l + 1, r + 1) - zeta_value(r + 1) * (-1) ** r for r in range(top + 1)]


def psi_laurent(j: int, l: int, truncation: int) -> LaurentSeries:
    """Expansion of psi_j(-l + eps), l >= 0, through eps^truncation."""
    if j not in (0, 1, 2):
        raise ValueError(f"order {j} not supported, expected 0, 1 or 2")
    if l < 0:
        raise ValueError("psi_laurent expands at non-positive integers -l, l >= 0")
    if truncation < -j - 1:
        raise ValueError("truncation below the leading pole")
    c = _pole_coefficients(l, truncation + j)
    coeffs: Dict[int, PolyValue] = {-(j + 1): PolyValue.const((-1) ** (j + 1) * math.factorial(j))}
    for r in range(j, truncation + j + 1):
        coeffs[r - j] = c[r] * (math.factorial(r) // math.factorial(r - j))
    return LaurentSeries(coeffs, truncation)


def psi_shifted(j: int, x: int, truncation: int) -> LaurentSeries:
    """psi_j(x + eps) for any integer x, through eps^truncation."""
    if x <= 0:
        return psi_laurent(j, -x, truncation)
    coeffs = {r: psi_any(j + r, x) / math.factorial(r) for r in range(truncation + 1)}
    return LaurentSeries(coeffs, truncation)


def gamma_shifted(x: int, truncation: int) -> LaurentSeries:
    """Gamma(x + eps) for a positive integer x, via exp of the log-gamma Taylor series."""
    if x < 1:
        return gamma_laurent(-x, truncation)
    log_part = LaurentSeries(
        {r: psi_any(r - 1, x) / math.factorial(r) for r in range(1, truncation + 1)}, truncation
    )
    return _exp_series(log_part, truncation) * math.factorial(x - 1)


def _exp_series(s: LaurentSeries, truncation: int) -> LaurentSeries:
    # s has no constant or negative terms
    out = LaurentSeries.constant(ONE, truncation)
    term = LaurentSeries.constant(ONE, truncation)
    for k in range(1, truncation + 1):
        term = term * s * Fraction(1, k)
        out = out + term
    return out


def gamma_laurent(l: int, truncation: int) -> LaurentSeries:
    """Expansion of Gamma(-l + eps), l >= 0, through eps^truncation."""
    if l < 0:
        raise ValueError("gamma_laurent expands at non-positive integers -l, l >= 0")
    if truncation < -1:
        raise ValueError("truncation must be at least -1 (the leading simple pole)")
    order = truncation + 1
    # log Gamma(1+eps) = -g eps + sum_{k>=2} (-1)^k zeta(k) eps^k / k
    log_g1 = LaurentSeries(
        {k: zeta_value(k) * Fraction((-1) ** k, k) for k in range(1, order + 1)}, order
    )
    series = _exp_series(log_g1, order) if order > 0 else LaurentSeries.constant(ONE, 0)
    # divide by eps (eps-1)...(eps-l)
    for i in range(1, l + 1):
        geom = LaurentSeries({r: Fraction(-1, i ** (r + 1)) for r in range(order + 1)}, order)
        series = series * geom
    coeffs = {k - 1: c for k, c in series.coefficients.items() if k - 1 <= truncation}
    return LaurentSeries(coeffs, truncation)


def polynomial_series(roots_shift: Iterable[int], scale: Fraction, truncation: int) -> LaurentSeries:
    """scale * prod_i (x_i + eps) as a series truncated at ``truncation``."""
    coeffs = [Fraction(scale)]
    for x in roots_shift:
        new = [Fraction(0)] * min(len(coeffs) + 1, truncation + 1)
        for k, c in enumerate(coeffs):
            if k < len(new):
                new[k] += c * x
            if k + 1 < len(new):
                new[k + 1] += c
        coeffs = new
    return LaurentSeries({k: c for k, c in enumerate(coeffs) if c}, truncation)
