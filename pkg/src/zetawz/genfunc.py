"""Bivariate generating functions in X = x^2 and Y = y^4.

The left-hand side sum_k k / (k^4 - X k^2 - Y) expands as
sum_{n,m} C(n+m, n) zeta(2n + 4m + 3) X^n Y^m.  :func:`lhs_expansion`
evaluates the general left-hand side sum_k (w0 + w1 k + w2 k^2) /
(k^4 - e1 k^2 + e2) from that kind of expansion, and :func:`rhs_taylor`
expands the accelerated right-hand side term by term in exact arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from . import formulas
from .errors import BudgetError, DomainError
from .mpoly import parse
from .numerics import RealD, check_digits, mpf_of, sym_factor, working_dps, zeta_tail
from .params import ParamsXY
from .summation import EvalReport

MAX_ORDER = 4
MAX_RHS_TERMS = 400

# expansion ratio targeted when splitting off the first few k exactly
_SPLIT_RATIO = Fraction(1, 16)


def coeff_weight(n: int, m: int) -> int:
    return math.comb(n + m, n)


def lhs_expansion(weights, e1: Fraction, e2: Fraction, digits: int) -> EvalReport:
    """sum_{k>=1} (w0 + w1 k + w2 k^2) / (k^4 - e1 k^2 + e2).

    Terms k < k0 are summed exactly.  For k >= k0, with u = (e1 k^2 - e2)/k^4
    and |u| <= rho, the geometric expansion gives
    sum_{i,l} C(i+l, i) e1^i (-e2)^l zeta_{k0}(4 - c + 2i + 4l) for each power k^c,
    truncated with remainder <= |w_c| zeta(2) rho^(J+1) / (1 - rho).
    """
    check_digits(digits)
    e1, e2 = Fraction(e1), Fraction(e2)
    w = [Fraction(x) for x in weights]
    k0 = 1
    while Fraction(abs(e1), k0 * k0) + Fraction(abs(e2), k0**4) > _SPLIT_RATIO:
        k0 += 1
    rho = Fraction(abs(e1), k0 * k0) + Fraction(abs(e2), k0**4)
    head = Fraction(0)
    for k in range(1, k0):
        f = sym_factor(e1, e2, k)
        if f == 0:
            raise DomainError(f"pole at k={k}")
        head += (w[0] + w[1] * k + w[2] * k * k) / f

    scale = sum(abs(x) for x in w) or Fraction(1)
    growth = max(Fraction(1), abs(e1) + abs(e2))
    with mpmath.workdps(working_dps(digits) + 10):
        target = mpmath.mpf(10) ** (-(digits + 6))
        bound_factor = mpf_of(scale) * mpmath.mpf(2) / mpf_of(1 - rho)
        J = 0
        if rho:
            while bound_factor * mpf_of(rho) ** (J + 1) >= target:
                J += 1
        tail_bound = bound_factor * mpf_of(rho) ** (J + 1) if rho else mpmath.mpf(0)
        extra = int(J * math.log10(growth)) + 5 if growth > 1 else 5
        zdigits = digits + extra

    total_prec = working_dps(digits) + extra
    with mpmath.workdps(total_prec):
        total = mpf_of(head)
        pairs = 0
        for j in range(J + 1):
            for i in range(j + 1):
                l = j - i
                coef = math.comb(j, i) * e1**i * (-e2) ** l
                if not coef:
                    continue
                pairs += 1
                for c in range(3):
                    if w[c]:
                        s = 4 - c + 2 * i + 4 * l
                        total += mpf_of(coef * w[c]) * zeta_tail(s, k0, zdigits)
        with mpmath.workdps(working_dps(digits)):
            value = +total
            tail_bound = +tail_bound
    return EvalReport(RealD(value, digits), max(pairs, 1), tail_bound, digits, "lhs")


def bivariate_lhs(px: ParamsXY, digits: int) -> EvalReport:
    """sum_k k / (k^4 - x^2 k^2 - y^4) through the zeta expansion."""
    px.require_admissible()
    rep = lhs_expansion((0, 1, 0), px.x2, -px.y4, digits)
    return EvalReport(rep.value, rep.terms_used, rep.tail_bound, digits, "lhs", px.as_dict())


# -- truncated bivariate series ---------------------------------------------------

class BiSeries:
    """Dense truncated series sum c[i][j] X^i Y^j with i <= nx, j <= ny."""

    __slots__ = ("nx", "ny", "c")

    def __init__(self, nx: int, ny: int, c=None):
        self.nx, self.ny = nx, ny
        self.c = c if c is not None else [[Fraction(0)] * (ny + 1) for _ in range(nx + 1)]

    @classmethod
    def const(cls, nx, ny, value) -> "BiSeries":
        s = cls(nx, ny)
        s.c[0][0] = Fraction(value)
        return s

    def __getitem__(self, idx):
        i, j = idx
        return self.c[i][j]

    def __add__(self, other: "BiSeries") -> "BiSeries":
        return BiSeries(self.nx, self.ny, [
            [a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.c, other.c)
        ])

    def scale(self, s) -> "BiSeries":
        return BiSeries(self.nx, self.ny, [[a * s for a in row] for row in self.c])

    def __mul__(self, other: "BiSeries") -> "BiSeries":
        out = BiSeries(self.nx, self.ny)
        a, b = self.c, other.c
        for i1 in range(self.nx + 1):
            for j1 in range(self.ny + 1):
                x = a[i1][j1]
                if not x:
                    continue
                for i2 in range(self.nx + 1 - i1):
                    row = out.c[i1 + i2]
                    brow = b[i2]
                    for j2 in range(self.ny + 1 - j1):
                        if brow[j2]:
                            row[j1 + j2] += x * brow[j2]
        return out

    def inverse(self) -> "BiSeries":
        f = self.c
        f00 = f[0][0]
        if not f00:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        g = BiSeries(self.nx, self.ny)
        g.c[0][0] = 1 / f00
        order = sorted(
            ((i, j) for i in range(self.nx + 1) for j in range(self.ny + 1) if i or j),
            key=lambda t: (t[0] + t[1], t),
        )
        for i, j in order:
            acc = Fraction(0)
            for i1 in range(i + 1):
                for j1 in range(j + 1):
                    if (i1 or j1) and f[i1][j1]:
                        acc += f[i1][j1] * g.c[i - i1][j - j1]
            g.c[i][j] = -acc / f00
        return g

    def real(self, digits: int):
        with mpmath.workdps(working_dps(digits)):
            return [[mpf_of(x) for x in row] for row in self.c]

    def dot(self, x2: Fraction, y4: Fraction) -> Fraction:
        return sum(
            (self.c[i][j] * Fraction(x2) ** i * Fraction(y4) ** j
             for i in range(self.nx + 1) for j in range(self.ny + 1)),
            Fraction(0),
        )


@lru_cache(maxsize=8)
def _r_poly(text: str):
    return parse(text, {}, ("n", "x2", "y4"))


def r_series(n: int, nx: int, ny: int, text: str = formulas.R_POLY) -> BiSeries:
    """r(n) as a polynomial in X = x^2, Y = y^4."""
    poly = _r_poly(text)
    out = BiSeries(nx, ny)
    for (a, i, j), c in poly.terms.items():
        if i <= nx and j <= ny:
            out.c[i][j] += c * n**a
    return out


def _factor_series(m: int, nx: int, ny: int) -> BiSeries:
    """m^4 - X m^2 - Y."""
    s = BiSeries.const(nx, ny, m**4)
    if nx >= 1:
        s.c[1][0] = Fraction(-m * m)
    if ny >= 1:
        s.c[0][1] = Fraction(-1)
    return s


def _numer_series(m: int, nx: int, ny: int) -> BiSeries:
    """(m^2 - X)^2 + 4Y."""
    s = BiSeries.const(nx, ny, m**4)
    if nx >= 1:
        s.c[1][0] = Fraction(-2 * m * m)
    if nx >= 2:
        s.c[2][0] = Fraction(1)
    if ny >= 1:
        s.c[0][1] = Fraction(4)
    return s


@dataclass
class TaylorTable:
    coeffs: BiSeries
    last_term: BiSeries
    n_terms: int

    @property
    def orders(self):
        return self.coeffs.nx, self.coeffs.ny

    def value(self, i: int, j: int, digits: int) -> RealD:
        with mpmath.workdps(working_dps(digits)):
            return RealD(mpf_of(self.coeffs[i, j]), digits)


def iter_rhs_series(nx: int, ny: int, text: str = formulas.R_POLY):
    """Exact bivariate expansions of the successive accelerated-series terms."""
    numer = BiSeries.const(nx, ny, 1)
    inv_den = _factor_series(1, nx, ny).inverse() * _factor_series(2, nx, ny).inverse()
    n = 1
    while True:
        scale = Fraction((-1) ** (n - 1), 2 * n * math.comb(2 * n, n))
        yield (r_series(n, nx, ny, text) * numer * inv_den).scale(scale)
        numer = numer * _numer_series(n, nx, ny)
        inv_den = (
            inv_den
            * _factor_series(n, nx, ny)
            * _factor_series(2 * n + 1, nx, ny).inverse()
            * _factor_series(2 * n + 2, nx, ny).inverse()
        )
        n += 1


def rhs_taylor(n_terms: int, orders: tuple[int, int]) -> TaylorTable:
    """Sum the first ``n_terms`` expanded terms; c[i][j] ~ C(i+j, i) zeta(2i+4j+3)."""
    nx, ny = orders
    if not (0 <= nx <= MAX_ORDER and 0 <= ny <= MAX_ORDER):
        raise BudgetError(f"orders {orders} exceed the supported maximum {MAX_ORDER}")
    if not (1 <= n_terms <= MAX_RHS_TERMS):
        raise BudgetError(f"term count {n_terms} outside 1..{MAX_RHS_TERMS}")
    total = BiSeries(nx, ny)
    last = total
    gen = iter_rhs_series(nx, ny)
    for _ in range(n_terms):
        last = next(gen)
        total = total + last
    return TaylorTable(total, last, n_terms)
