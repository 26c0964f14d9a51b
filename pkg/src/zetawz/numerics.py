"""Exact rational helpers, the arbitrary-precision real layer and the zeta oracle.

Exact quantities are plain :class:`fractions.Fraction` objects.  Real values
are :mod:`mpmath` floats wrapped in :class:`RealD`, which remembers how many
decimal digits the value is meant to be correct to.

:func:`zeta_reference` is the independent oracle for every accelerated
series in the package: it uses Euler-Maclaurin summation only.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .errors import BudgetError, DomainError, ParseError, PoleError

Rational = Fraction

#: extra working digits carried by every real computation
GUARD_DIGITS = 15
MAX_DIGITS = 1000

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (q positive) into an exact rational.

    Floats are rejected on purpose; parameters must be exact.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool) or isinstance(text, float):
        raise ParseError(f"refusing inexact value {text!r}; use 'p/q'")
    if isinstance(text, int):
        return Fraction(text)
    m = _RATIONAL_RE.match(str(text))
    if not m:
        raise ParseError(f"not a rational literal: {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def check_digits(digits: int) -> int:
    if not isinstance(digits, int) or isinstance(digits, bool) or digits < 1:
        raise DomainError(f"digits must be a positive integer, got {digits!r}")
    if digits > MAX_DIGITS:
        raise BudgetError(f"digits {digits} exceeds the supported maximum {MAX_DIGITS}")
    return digits


def working_dps(digits: int) -> int:
    return check_digits(digits) + GUARD_DIGITS


def mpf_of(q: Fraction | int) -> mpmath.mpf:
    """Correctly rounded conversion at the current mpmath precision."""
    q = Fraction(q)
    return mpmath.mpf(q.numerator) / q.denominator


@dataclass(frozen=True)
class RealD:
    """A real value meant to be correct to ``digits`` significant digits."""

    value: mpmath.mpf
    digits: int
    guard: int = GUARD_DIGITS

    def __post_init__(self):
        if self.guard < 15:
            raise ValueError("guard digits must be at least 15")
        check_digits(self.digits)

    def __str__(self) -> str:
        return mpmath.nstr(self.value, self.digits, strip_zeros=False)

    def __float__(self) -> float:
        return float(self.value)


def binomial(n: int, k: int) -> int:
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"binomial({n}, {k}) requires 0 <= k <= n")
    return math.comb(n, k)


def pochhammer(lam: Fraction, nu: int) -> Fraction:
    """Rising factorial (lam)_nu = lam (lam+1) ... (lam+nu-1), with (lam)_0 = 1."""
    if nu < 0:
        raise DomainError("pochhammer index must be non-negative")
    out = Fraction(1)
    for i in range(nu):
        out *= lam + i
    return out


def sym_factor(e1: Fraction, e2: Fraction, m: int) -> Fraction:
    """(m^2 - a^2)(m^2 - b^2) written through e1 = a^2 + b^2 and e2 = a^2 b^2."""
    m2 = m * m
    return m2 * m2 - e1 * m2 + e2


def sym_product(e1: Fraction, e2: Fraction, start: int, stop: int) -> Fraction:
    """Exact product of ``sym_factor(e1, e2, m)`` for ``start <= m <= stop``.

    The empty range (``start == stop + 1``) gives 1.
    """
    if start < 1:
        raise DomainError("sym_product starts at m >= 1")
    if start > stop + 1:
        raise DomainError(f"invalid range {start}..{stop}")
    out = Fraction(1)
    for m in range(start, stop + 1):
        f = sym_factor(e1, e2, m)
        if f == 0:
            raise PoleError(m)
        out *= f
    return out


def to_real(q: Fraction | int, digits: int) -> RealD:
    with mpmath.workdps(working_dps(digits)):
        return RealD(mpf_of(q), digits)


@lru_cache(maxsize=None)
def _bernoulli(n: int) -> Fraction:
    p, q = mpmath.bernfrac(n)
    return Fraction(int(p), int(q))


@lru_cache(maxsize=4096)
def _zeta_tail_cached(s: int, start: int, dps: int) -> mpmath.mpf:
    eps = mpmath.mpf(10) ** (-(dps - GUARD_DIGITS + 5))
    cutoff = max(start, 50, dps - GUARD_DIGITS)
    total = mpmath.fsum(mpmath.mpf(k) ** (-s) for k in range(start, cutoff))
    N = mpmath.mpf(cutoff)
    total += N ** (1 - s) / (s - 1) + N ** (-s) / 2
    # Euler-Maclaurin corrections; for real s > 1 the remainder is bounded by
    # the first omitted term.
    rising = Fraction(s)  # (s)_{2j-1}
    power = N ** (-s - 1)
    inv_n2 = 1 / (N * N)
    fact = 2  # (2j)!
    j = 1
    prev = None
    while True:
        term = mpf_of(_bernoulli(2 * j) * rising / fact) * power
        if abs(term) < eps:
            break
        if prev is not None and abs(term) > abs(prev):
            raise ArithmeticError("Euler-Maclaurin terms stopped decreasing")
        total += term
        prev = term
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        power *= inv_n2
        fact *= (2 * j + 1) * (2 * j + 2)
        j += 1
    return +total


def zeta_tail(s: int, start: int, digits: int) -> mpmath.mpf:
    """Sum of k^-s over k >= start, to ``digits`` digits (absolute error < 10^-(digits+5))."""
    if s < 2:
        raise DomainError(f"zeta tail needs integer s >= 2, got {s}")
    if start < 1:
        raise DomainError("zeta tail starts at k >= 1")
    dps = working_dps(digits)
    with mpmath.workdps(dps):
        return _zeta_tail_cached(int(s), int(start), dps)


def zeta_reference(s: int, digits: int) -> RealD:
    """zeta(s) for integer s >= 2 by Euler-Maclaurin summation."""
    if not isinstance(s, int) or s < 2:
        raise DomainError(f"zeta_reference needs integer s >= 2, got {s!r}")
    return RealD(zeta_tail(s, 1, digits), digits)
