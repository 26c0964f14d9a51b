"""Evaluators for the accelerated zeta series and their convergence profiles.

Each series is produced as a generator of exact rational terms; the products
inside the terms are carried incrementally, and conversion to mpmath floats
happens only when a term is accumulated.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

import mpmath

from . import formulas
from .errors import DomainError, ParseError
from .genfunc import _r_poly, bivariate_lhs
from .numerics import RealD, mpf_of, sym_factor, zeta_reference
from .params import InitCond, ParamsE, ParamsXY
from .recurrence import LSequence, iter_d
from .summation import EvalReport, partial_sums, sum_series
from . import wz_pair

__all__ = [
    "ParamsXY",
    "EvalReport",
    "r_eval",
    "koecher_rhs",
    "ag_rhs",
    "cb_rhs",
    "thm1_rhs",
    "thm2_rhs",
    "zeta7_series",
    "markov_zeta4_series",
    "convergence_profile",
    "evaluate",
    "SERIES_IDS",
]


def r_eval(n: int, px: ParamsXY, text: str = formulas.R_POLY) -> Fraction:
    return _r_poly(text).evaluate({"n": n, "x2": px.x2, "y4": px.y4})


# -- term generators ---------------------------------------------------------------

def koecher_terms(x2: Fraction) -> Iterator[Fraction]:
    x2 = Fraction(x2)
    prod = Fraction(1)
    k = 1
    while True:
        yield (
            Fraction((-1) ** (k - 1), 2 * k**3 * math.comb(2 * k, k))
            * (5 * k * k - x2) / (k * k - x2) * prod
        )
        prod *= 1 - x2 / (k * k)
        k += 1


def ag_terms(y4: Fraction) -> Iterator[Fraction]:
    y4 = Fraction(y4)
    prod = Fraction(1)
    k = 1
    while True:
        k4 = k**4
        yield Fraction(5 * (-1) ** (k - 1), 2 * math.comb(2 * k, k)) * k / (k4 - y4) * prod
        prod *= (k4 + 4 * y4) / (k4 - y4)
        k += 1


def cb_terms(x2: Fraction, y4: Fraction) -> Iterator[Fraction]:
    x2, y4 = Fraction(x2), Fraction(y4)
    prod = Fraction(1)
    k = 1
    while True:
        k2 = k * k
        den = k2 * k2 - x2 * k2 - y4
        if den == 0:
            raise DomainError(f"pole at k={k}")
        yield Fraction((-1) ** (k - 1), 2 * k * math.comb(2 * k, k)) * (5 * k2 - x2) / den * prod
        prod *= ((k2 - x2) ** 2 + 4 * y4) / den
        k += 1


def thm1_terms(init: InitCond, p: ParamsE) -> Iterator[Fraction]:
    """d_n / prod_{m<=n} (m^4 - e1 m^2 + e2)."""
    denom = Fraction(1)
    for d in iter_d(LSequence(init, p)):
        denom *= sym_factor(p.e1, p.e2, d.n)
        yield d.value / denom


def thm2_terms(px: ParamsXY, r_text: str = formulas.R_POLY) -> Iterator[Fraction]:
    x2, y4 = px.x2, px.y4
    poly = _r_poly(r_text)

    def f(m):
        return sym_factor(x2, -y4, m)

    numer = Fraction(1)
    denom = f(1) * f(2)
    n = 1
    while True:
        r = poly.evaluate({"n": n, "x2": x2, "y4": y4})
        yield Fraction((-1) ** (n - 1), 2 * n * math.comb(2 * n, n)) * r * numer / denom
        numer *= (n * n - x2) ** 2 + 4 * y4
        denom = denom / f(n) * f(2 * n + 1) * f(2 * n + 2)
        n += 1


def zeta7_terms() -> Iterator[Fraction]:
    h_2n = Fraction(0)  # sum_{m<=2n} 1/m^4
    h_prev = Fraction(0)  # sum_{m<=n-1} 1/m^4
    n = 1
    while True:
        h_2n += Fraction(1, (2 * n - 1) ** 4) + Fraction(1, (2 * n) ** 4)
        c5 = math.comb(2 * n, n) ** 5
        sign = (-1) ** n
        first = Fraction(sign * (25 * n * n - 10 * n + 2), 2 * n**9 * c5)
        second = Fraction(sign * (205 * n * n - 160 * n + 32), 2 * n**5 * c5) * (h_2n + 3 * h_prev)
        yield first - second
        h_prev += Fraction(1, n**4)
        n += 1


def markov_zeta4_terms() -> Iterator[Fraction]:
    """zeta(4) = sum (1/n!^4) ((4n+1)/(2n^2) L_n + 7n^3/4 L_{n-1}), L_0 = 0, L_1 = 1/3."""
    L_prev, L = Fraction(0), Fraction(1, 3)
    fact4 = 1
    n = 1
    while True:
        fact4 *= n**4
        yield (Fraction(4 * n + 1, 2 * n * n) * L + Fraction(7 * n**3, 4) * L_prev) / fact4
        L_next = (n**7 * (n + 1) ** 3 * L_prev - 2 * (n + 1) ** 3 * (6 * n**3 + 9 * n**2 + 5 * n + 1) * L) / (
            4 * (4 * n + 3) * (4 * n + 5)
        )
        L_prev, L = L, L_next
        n += 1


# -- evaluators --------------------------------------------------------------------

def _check_abs(value: Fraction, name: str):
    if abs(value) >= 1:
        raise DomainError(f"need |{name}| < 1, got {value}")


def koecher_rhs(x2, digits: int, **kw) -> EvalReport:
    x2 = Fraction(x2)
    _check_abs(x2, "x2")
    return sum_series(koecher_terms(x2), digits, "koecher", params={"x2": str(x2)}, **kw)


def ag_rhs(y4, digits: int, **kw) -> EvalReport:
    y4 = Fraction(y4)
    _check_abs(y4, "y4")
    return sum_series(ag_terms(y4), digits, "ag", params={"y4": str(y4)}, **kw)


def cb_rhs(px: ParamsXY, digits: int, **kw) -> EvalReport:
    px.to_e().require_admissible()
    return sum_series(cb_terms(px.x2, px.y4), digits, "cb", params=px.as_dict(), **kw)


def thm1_rhs(init: InitCond, p: ParamsE, digits: int, **kw) -> EvalReport:
    p.require_admissible()
    return sum_series(thm1_terms(init, p), digits, "thm1", params={**p.as_dict(), **init.as_dict()}, **kw)


def thm2_rhs(px: ParamsXY, digits: int, **kw) -> EvalReport:
    px.require_admissible()
    return sum_series(thm2_terms(px), digits, "thm2", params=px.as_dict(), **kw)


def zeta7_series(digits: int, **kw) -> EvalReport:
    return sum_series(zeta7_terms(), digits, "zeta7", **kw)


def markov_zeta4_series(digits: int, **kw) -> EvalReport:
    return sum_series(markov_zeta4_terms(), digits, "markov-zeta4", **kw)


# -- registry used by the profile and the CLI ----------------------------------------

def _xy(params) -> ParamsXY:
    return ParamsXY(params.get("x2", 0), params.get("y4", 0))


def _e(params) -> ParamsE:
    return ParamsE(params.get("e1", 0), params.get("e2", 0))


def _init(params, default=(0, 1, 0)) -> InitCond:
    return InitCond(*(params.get(k, d) for k, d in zip(("A0", "B0", "C0"), default)))


@dataclass(frozen=True)
class SeriesEntry:
    evaluate: Callable
    terms: Callable | None
    reference: Callable


def _ref_lhs(xy_fn):
    return lambda params, digits: bivariate_lhs(xy_fn(params), digits).value.value


_REGISTRY = {
    "koecher": SeriesEntry(
        lambda pr, d, **kw: koecher_rhs(_xy(pr).x2, d, **kw),
        lambda pr: koecher_terms(_xy(pr).x2),
        _ref_lhs(lambda pr: ParamsXY(_xy(pr).x2, 0)),
    ),
    "ag": SeriesEntry(
        lambda pr, d, **kw: ag_rhs(_xy(pr).y4, d, **kw),
        lambda pr: ag_terms(_xy(pr).y4),
        _ref_lhs(lambda pr: ParamsXY(0, _xy(pr).y4)),
    ),
    "cb": SeriesEntry(
        lambda pr, d, **kw: cb_rhs(_xy(pr), d, **kw),
        lambda pr: cb_terms(_xy(pr).x2, _xy(pr).y4),
        _ref_lhs(_xy),
    ),
    "thm1": SeriesEntry(
        lambda pr, d, **kw: thm1_rhs(_init(pr), _e(pr), d, **kw),
        lambda pr: thm1_terms(_init(pr), _e(pr)),
        lambda pr, d: wz_pair.sum_F0(_init(pr), _e(pr), d).value.value,
    ),
    "thm2": SeriesEntry(
        lambda pr, d, **kw: thm2_rhs(_xy(pr), d, **kw),
        lambda pr: thm2_terms(_xy(pr)),
        _ref_lhs(_xy),
    ),
    "zeta7": SeriesEntry(
        lambda pr, d, **kw: zeta7_series(d, **kw),
        lambda pr: zeta7_terms(),
        lambda pr, d: zeta_reference(7, d).value,
    ),
    "markov-zeta4": SeriesEntry(
        lambda pr, d, **kw: markov_zeta4_series(d, **kw),
        lambda pr: markov_zeta4_terms(),
        lambda pr, d: zeta_reference(4, d).value,
    ),
    "lhs": SeriesEntry(
        lambda pr, d, **kw: bivariate_lhs(_xy(pr), d),
        None,
        _ref_lhs(_xy),
    ),
    "wz-f0": SeriesEntry(
        lambda pr, d, **kw: wz_pair.sum_F0(_init(pr), _e(pr), d),
        None,
        lambda pr, d: wz_pair.sum_F0(_init(pr), _e(pr), d).value.value,
    ),
    "wz-row": SeriesEntry(
        lambda pr, d, **kw: wz_pair.sum_G_n0(_init(pr), _e(pr), d, **kw),
        lambda pr: wz_pair._g_terms(_init(pr), _e(pr)),
        lambda pr, d: wz_pair.sum_F0(_init(pr), _e(pr), d).value.value,
    ),
    "wz-diagonal": SeriesEntry(
        lambda pr, d, **kw: wz_pair.sum_diagonal(_init(pr), _e(pr), d, **kw),
        lambda pr: wz_pair.diagonal_terms(_init(pr), _e(pr)),
        lambda pr, d: wz_pair.sum_F0(_init(pr), _e(pr), d).value.value,
    ),
}
_ALIASES = {"eq1": "koecher", "eq2": "ag", "eq3": "cb"}
SERIES_IDS = tuple(_REGISTRY) + tuple(_ALIASES)


def _entry(series_id: str) -> SeriesEntry:
    key = _ALIASES.get(series_id, series_id)
    if key not in _REGISTRY:
        raise ParseError(f"unknown series id {series_id!r}")
    return _REGISTRY[key]


def evaluate(series_id: str, params: dict, digits: int, **kw) -> EvalReport:
    """Dispatch by id; ``params`` holds any of x2, y4, e1, e2, A0, B0, C0."""
    return _entry(series_id).evaluate(params, digits, **kw)


def reference_value(series_id: str, params: dict, digits: int):
    return _entry(series_id).reference(params, digits)


@dataclass
class ConvergenceProfile:
    series_id: str
    rows: list
    slope: float
    reference: mpmath.mpf

    def as_dict(self) -> dict:
        return {
            "series": self.series_id,
            "slope": self.slope,
            "rows": [
                {
                    "n": n,
                    "partial_sum": mpmath.nstr(s, 40),
                    "abs_error": mpmath.nstr(err, 6),
                    "digits_gained": gained,
                    "cumulative_digits": cum,
                }
                for n, s, err, gained, cum in self.rows
            ],
        }


def convergence_profile(series_id: str, params: dict, N: int, fit_from: int = 10) -> ConvergenceProfile:
    """Per-term error table against an independent reference, plus the
    least-squares digits-per-term slope over n in [fit_from, N]."""
    entry = _entry(series_id)
    if entry.terms is None:
        raise ParseError(f"series {series_id!r} has no term sequence to profile")
    if N <= fit_from:
        raise DomainError(f"need N > {fit_from} to fit a slope")
    digits = math.ceil(3.2 * N) + 40
    ref = entry.reference(params, digits)
    with mpmath.workdps(digits + 15):
        sums = partial_sums(entry.terms(params), N, digits + 15)
        rows = []
        prev_cum = 0.0
        floor = mpmath.mpf(10) ** (-digits)
        for n, s in enumerate(sums, 1):
            err = abs(s - ref)
            cum = float(-mpmath.log10(max(err, floor)))
            rows.append((n, s, err, cum - prev_cum, cum))
            prev_cum = cum
    xs = [r[0] for r in rows if r[0] >= fit_from]
    ys = [r[4] for r in rows if r[0] >= fit_from]
    slope = statistics.linear_regression(xs, ys).slope
    return ConvergenceProfile(series_id, rows, slope, ref)
