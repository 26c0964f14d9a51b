"""The second-order recurrence for L(n), the coefficients d_n, and their derivation.

L(n) drives the non-B0 part of the coefficient functions of the WZ pair.
Values are computed by exact forward recursion; the recurrence itself is
re-derived symbolically from the first-order coefficient system by
:func:`derive_l_recurrence`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping

import mpmath

from . import formulas
from .errors import DomainError, UndefinedRatioError
from .mpoly import MultiPoly, RatFun
from .numerics import RealD
from .params import InitCond, ParamsE
from .symbolic import base_namespace, expr, relation, shift_n, solve_for, sym


@lru_cache(maxsize=64)
def _poly_in_n_e(text: str) -> MultiPoly:
    r = expr(text, base_namespace())
    if not r.is_polynomial():
        raise ValueError("expected a polynomial formula")
    return r.as_poly()


@lru_cache(maxsize=256)
def _coeffs_in_n(text: str, e1: Fraction, e2: Fraction) -> tuple:
    """Coefficients (low to high) of the formula as a polynomial in n at fixed e1, e2."""
    poly = _poly_in_n_e(text)
    return tuple(c.evaluate({"e1": e1, "e2": e2}) for c in poly.coeffs_in("n"))


def _horner(coeffs, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _eval_formula(text, n, e1, e2):
    numeric = all(isinstance(v, (int, Fraction)) for v in (n, e1, e2))
    if numeric:
        return _horner(_coeffs_in_n(text, Fraction(e1), Fraction(e2)), Fraction(n))
    poly = _poly_in_n_e(text)
    bindings = {}
    for name, v in (("n", n), ("e1", e1), ("e2", e2)):
        if v is None or (isinstance(v, str) and v == name):
            continue
        bindings[name] = v
    return poly.substitute(bindings).as_poly() if bindings else poly


def p_eval(n, e1=None, e2=None, text: str = formulas.P_POLY):
    """p(n) in (e1, e2) form.  Numeric arguments give a Fraction; pass None
    (or the symbol's own name) to keep a variable symbolic."""
    return _eval_formula(text, n, e1, e2)


def q_eval(n, e1=None, e2=None, text: str = formulas.Q_POLY):
    return _eval_formula(text, n, e1, e2)


@lru_cache(maxsize=8)
def _l1_coeffs(text: str):
    ns = base_namespace()
    coef_a = expr(text, {**ns, "A0": 1, "C0": 0}).as_poly()
    coef_c = expr(text, {**ns, "A0": 0, "C0": 1}).as_poly()
    return coef_a, coef_c


class LSequence:
    """Exact solution L(0), L(1), ... of the second-order recurrence.

    L(0) = C0 and L(1) is linear in A0, C0; B0 never enters.
    """

    def __init__(self, init: InitCond, params: ParamsE):
        self.init = init
        self.params = params
        e = {"e1": params.e1, "e2": params.e2}
        ca, cc = _l1_coeffs(formulas.L1_INIT)
        self._p = _coeffs_in_n(formulas.P_POLY, params.e1, params.e2)
        self._q = _coeffs_in_n(formulas.Q_POLY, params.e1, params.e2)
        self.values: list[Fraction] = [
            init.C0,
            ca.evaluate(e) * init.A0 + cc.evaluate(e) * init.C0,
        ]

    def coefficients(self, n: int) -> tuple[Fraction, Fraction, Fraction]:
        """(alpha, beta, gamma) with alpha L(n+1) + beta L(n) + gamma L(n-1) = 0."""
        e1 = self.params.e1
        alpha = 4 * (4 * n + 3) * (4 * n + 5) * (5 * n * n - 2 * e1)
        beta = 2 * (n + 1) * _horner(self._p, Fraction(n))
        gamma = -n * (n + 1) * (5 * (n + 1) ** 2 - 2 * e1) * _horner(self._q, Fraction(n))
        return alpha, beta, gamma

    def extend(self, upto: int) -> "LSequence":
        vals = self.values
        while len(vals) <= upto:
            n = len(vals) - 1
            alpha, beta, gamma = self.coefficients(n)
            if alpha == 0:
                raise DomainError(f"degenerate recurrence: leading coefficient vanishes at n={n}")
            vals.append(-(beta * vals[n] + gamma * vals[n - 1]) / alpha)
        return self

    def __getitem__(self, n: int) -> Fraction:
        if n < 0:
            raise IndexError("L(n) is defined for n >= 0")
        self.extend(n)
        return self.values[n]

    def residual(self, n: int) -> Fraction:
        alpha, beta, gamma = self.coefficients(n)
        return alpha * self[n + 1] + beta * self[n] + gamma * self[n - 1]


def l_extend(seq: LSequence, upto: int) -> LSequence:
    return seq.extend(upto)


@dataclass(frozen=True)
class DnCoeff:
    n: int
    value: Fraction


def _b0_weight_step(n: int, e1: Fraction, e2: Fraction) -> Fraction:
    """Ratio W(n+1)/W(n) of the B0 weight (-1)^(n-1) (n-1)! / 2^(n+1) prod (...)/(2m+1)."""
    return -n * ((n * n - e1) ** 2 - 4 * e2) / (2 * (2 * n + 1))


def _d_value(n, weight, seq: LSequence) -> Fraction:
    e1, e2 = seq.params.e1, seq.params.e2
    den = 5 * n * n - 2 * e1
    if den == 0:
        raise DomainError(f"5n^2 - 2e1 vanishes at n={n}")
    b_part = seq.init.B0 * weight * (5 * n * n - e1)
    l_now = Fraction(20 * n + 5) / (2 * den) * seq[n]
    l_prev = (35 * n**5 - 35 * n**3 * e1 + 4 * n * (3 * e1 * e1 - 10 * e2)) / (4 * den) * seq[n - 1]
    return b_part + l_now + l_prev


def d_coeff(n: int, seq: LSequence) -> DnCoeff:
    if n < 1:
        raise DomainError("d_n is defined for n >= 1")
    weight = Fraction(1, 4)
    for m in range(1, n):
        weight *= _b0_weight_step(m, seq.params.e1, seq.params.e2)
    return DnCoeff(n, _d_value(n, weight, seq))


def iter_d(seq: LSequence) -> Iterator[DnCoeff]:
    """d_1, d_2, ... with the B0 weight updated by one multiplication per step."""
    weight = Fraction(1, 4)
    n = 1
    while True:
        yield DnCoeff(n, _d_value(n, weight, seq))
        weight *= _b0_weight_step(n, seq.params.e1, seq.params.e2)
        n += 1


def ratio_estimate(seq: LSequence, n: int) -> RealD:
    """|L(n) / (n!)^4|^(1/n); tends to at most 1/4 by the characteristic roots -1/4, 1/16."""
    if n < 10:
        raise DomainError("ratio_estimate needs n >= 10")
    value = seq[n]
    if value == 0:
        raise UndefinedRatioError(f"L({n}) = 0; ratio undefined")
    with mpmath.workdps(30):
        scaled = abs(mpmath.mpf(value.numerator) / value.denominator) / mpmath.mpf(math.factorial(n)) ** 4
        return RealD(scaled ** (mpmath.mpf(1) / n), 15)


# -- symbolic derivation ----------------------------------------------------------

@dataclass
class LRecurrenceReport:
    coeff_plus: MultiPoly
    coeff_zero: MultiPoly
    coeff_minus: MultiPoly
    common_factor: MultiPoly | None
    b0_residual: RatFun
    p_derived: MultiPoly | None
    q_derived: MultiPoly | None
    verdict: bool
    residuals: list = field(default_factory=list)
    checked_relations: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "verdict": "pass" if self.verdict else "fail",
            "checked_relations": list(self.checked_relations),
            "residuals": [[name, repr(r)] for name, r in self.residuals],
            "p_derived": repr(self.p_derived),
            "q_derived": repr(self.q_derived),
            "common_factor": repr(self.common_factor),
        }


def _stated_coefficients(recurrence_text, p_text, q_text):
    ns = base_namespace()
    ns["p"] = expr(p_text, ns)
    ns["q"] = expr(q_text, ns)
    out = []
    for name in ("Lnext", "Lcur", "Lprev"):
        vals = {k: (1 if k == name else 0) for k in ("Lnext", "Lcur", "Lprev")}
        out.append(expr(recurrence_text, {**ns, **vals}).as_poly())
    return out


def derive_l_recurrence(
    relations: Mapping[str, str] = formulas.RELATIONS,
    closed_forms: Mapping[str, str] = formulas.CLOSED_FORMS,
    p_text: str = formulas.P_POLY,
    q_text: str = formulas.Q_POLY,
    recurrence_text: str = formulas.L_RECURRENCE,
    p_shift: str = formulas.P_SHIFT,
) -> LRecurrenceReport:
    """Substitute the closed forms for K and E into the last relation of the
    coefficient system and recover alpha L(n+1) + beta L(n) + gamma L(n-1) = 0.

    The B0 product P must drop out, and the result must agree with the stated
    recurrence up to a common polynomial factor.
    """
    ns = base_namespace()
    ns.update(E=sym("E"), L=sym("L"), L2=sym("L2"), P=sym("P"))
    K = solve_for(closed_forms["K_closed"], "K", ns)
    E = solve_for(closed_forms["E_closed"], "E", ns)
    P2 = solve_for(p_shift, "P2", ns)
    K2 = shift_n(K, L=sym("L2"), P=P2)
    E2 = shift_n(E, L2=sym("L3"), L=sym("L2"), P=P2)
    rel = relation(relations["E_step"], {**ns, "K": K, "E": E, "K2": K2, "E2": E2})
    num = rel.num
    residuals = []
    p_coeffs = num.coeffs_in("P")
    b0_residual = RatFun(p_coeffs[1]) if len(p_coeffs) > 1 else RatFun(MultiPoly.const(0, num.vars))
    if not b0_residual.is_zero():
        residuals.append(("B0 carrier", b0_residual))
    # index shift n -> n-1 so the unknowns read L(n+1), L(n), L(n-1)
    shifted = shift_n(RatFun(p_coeffs[0]), -1).num

    def coeff(name):
        cs = shifted.coeffs_in(name)
        return cs[1] if len(cs) > 1 else MultiPoly.const(0, shifted.vars)

    plus, zero, minus = coeff("L3"), coeff("L2"), coeff("L")
    rest = shifted - plus * sym("L3") - zero * sym("L2") - minus * sym("L")
    if not rest.is_zero():
        residuals.append(("non-linear remainder", RatFun(rest)))

    stated_plus, stated_zero, stated_minus = _stated_coefficients(recurrence_text, p_text, q_text)
    factor = plus.exact_div(stated_plus)
    p_derived = q_derived = None
    if factor is None:
        residuals.append(("alpha", RatFun(plus) / stated_plus))
        red_plus, red_zero, red_minus = plus, zero, minus
    else:
        red_plus = stated_plus
        red_zero = zero.exact_div(factor)
        red_minus = minus.exact_div(factor)
        n = sym("n")
        e1 = sym("e1")
        if red_zero is None or red_minus is None:
            residuals.append(("common factor", RatFun(factor)))
            red_zero = red_zero or zero
            red_minus = red_minus or minus
        else:
            p_derived = red_zero.exact_div(2 * (n + 1))
            q_derived = red_minus.exact_div(-n * (n + 1) * (5 * (n + 1) ** 2 - 2 * e1))
            p_stated = _poly_in_n_e(p_text)
            q_stated = _poly_in_n_e(q_text)
            if p_derived is None or not (p_derived - p_stated).is_zero():
                residuals.append(("p", RatFun(red_zero - 2 * (n + 1) * p_stated)))
            if q_derived is None or not (q_derived - q_stated).is_zero():
                residuals.append(
                    ("q", RatFun(red_minus + n * (n + 1) * (5 * (n + 1) ** 2 - 2 * e1) * q_stated))
                )
    return LRecurrenceReport(
        coeff_plus=red_plus,
        coeff_zero=red_zero,
        coeff_minus=red_minus,
        common_factor=factor,
        b0_residual=b0_residual,
        p_derived=p_derived,
        q_derived=q_derived,
        verdict=not residuals,
        residuals=residuals,
        checked_relations=["B0 carrier", "alpha", "p", "q"],
    )
