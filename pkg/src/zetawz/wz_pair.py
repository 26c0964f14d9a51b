"""The Markov-WZ pair (F, G) built on the kernel

    H(n, k) = 1 / prod_{m=k+1}^{n+k+1} (m^2 - a^2)(m^2 - b^2),

with F = H (A + B(k+1) + C(k+1)^2) and G = H (D + E k + K k^2 + L k^3).
Everything is parameterized by e1 = a^2 + b^2, e2 = a^2 b^2 and evaluated in
exact rational arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping

import mpmath

from . import formulas
from .errors import DomainError
from .genfunc import lhs_expansion
from .mpoly import MultiPoly, RatFun
from .numerics import mpf_of, sym_product
from .params import InitCond, ParamsE
from .recurrence import LSequence
from .summation import EvalReport, sum_series
from .symbolic import base_namespace, relation, shift_n, solve_for, sym

__all__ = [
    "ParamsE",
    "InitCond",
    "CoefficientState",
    "CertReport",
    "kernel_H",
    "coeff_state",
    "iter_states",
    "F_eval",
    "G_eval",
    "certify_numeric",
    "certify_symbolic",
    "sum_F0",
    "sum_G_n0",
    "sum_diagonal",
]


@dataclass(frozen=True)
class CoefficientState:
    n: int
    A: Fraction
    B: Fraction
    C: Fraction
    D: Fraction
    E: Fraction
    K: Fraction
    L: Fraction


@dataclass
class CertReport:
    verdict: bool
    residuals: list = field(default_factory=list)
    checked_relations: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "verdict": "pass" if self.verdict else "fail",
            "checked_relations": list(self.checked_relations),
            "residuals": [[name, repr(r)] for name, r in self.residuals],
        }


def kernel_H(n: int, k: int, p: ParamsE) -> Fraction:
    return 1 / sym_product(p.e1, p.e2, k + 1, n + k + 1)


def _state(n: int, L: Fraction, L_next: Fraction, P: Fraction, p: ParamsE) -> CoefficientState:
    e1, e2 = p.e1, p.e2
    n1 = n + 1
    den = 5 * n1 * n1 - 2 * e1
    if den == 0:
        raise DomainError(f"5(n+1)^2 - 2e1 vanishes at n={n}")
    K = Fraction(7, 2) * n1 * L + P
    E = (
        (4 * n1 + 1) / (n1 * den) * L_next
        + (42 * n1**4 - 25 * n1**2 * e1 + 4 * (e1 * e1 - 2 * e2)) / (2 * den) * L
        + 3 * n1 * P
    )
    D = (
        ((40 * n1 + 10) * L_next + (35 * n1**5 - 35 * n1**3 * e1 + 4 * n1 * (3 * e1 * e1 - 10 * e2)) * L)
        / (4 * den)
        + (5 * n1 * n1 - e1) / 2 * P
    )
    C = (4 * n1 - 3) * L
    B = (4 * n1 - 2) * K - (10 * n1 * n1 - 3) * L
    A = (4 * n1 - 1) * E - (10 * n1 * n1 - 1) * K + (20 * n1**3 + 2 * n1 * e1 - 1) * L
    return CoefficientState(n, A, B, C, D, E, K, L)


def _p_step(n: int, p: ParamsE) -> Fraction:
    """P(n+1) / P(n) for the B0 product P(n)."""
    n1 = n + 1
    return -n1 * ((n1 * n1 - p.e1) ** 2 - 4 * p.e2) / (2 * (2 * n1 + 1))


def iter_states(init: InitCond, p: ParamsE, L_seq: LSequence | None = None) -> Iterator[CoefficientState]:
    """States at n = 0, 1, 2, ...; the B0 product is advanced incrementally."""
    seq = L_seq or LSequence(init, p)
    P = init.B0 / 2
    for n in itertools.count():
        yield _state(n, seq[n], seq[n + 1], P, p)
        P *= _p_step(n, p)


def coeff_state(n: int, L_seq: LSequence, init: InitCond, p: ParamsE) -> CoefficientState:
    P = init.B0 / 2
    for m in range(n):
        P *= _p_step(m, p)
    return _state(n, L_seq[n], L_seq[n + 1], P, p)


def F_eval(n: int, k: int, st: CoefficientState, p: ParamsE) -> Fraction:
    if st.n != n:
        raise ValueError(f"state is for n={st.n}, not n={n}")
    k1 = k + 1
    return kernel_H(n, k, p) * (st.A + st.B * k1 + st.C * k1 * k1)


def G_eval(n: int, k: int, st: CoefficientState, p: ParamsE) -> Fraction:
    if st.n != n:
        raise ValueError(f"state is for n={st.n}, not n={n}")
    return kernel_H(n, k, p) * (st.D + st.E * k + st.K * k * k + st.L * k**3)


def certify_numeric(n_max: int, k_max: int, init: InitCond, p: ParamsE) -> CertReport:
    """Check F(n+1,k) - F(n,k) == G(n,k+1) - G(n,k) exactly on the grid."""
    states = list(itertools.islice(iter_states(init, p), n_max + 2))
    checked = []
    for n in range(n_max + 1):
        st, nxt = states[n], states[n + 1]
        for k in range(k_max + 1):
            lhs = F_eval(n + 1, k, nxt, p) - F_eval(n, k, st, p)
            rhs = G_eval(n, k + 1, st, p) - G_eval(n, k, st, p)
            checked.append((n, k))
            if lhs != rhs:
                return CertReport(False, [((n, k), lhs - rhs)], [f"telescoping@{n},{k}" for n, k in checked])
    return CertReport(True, [], [f"telescoping grid n<={n_max}, k<={k_max}"])


def certify_symbolic(
    relations: Mapping[str, str] = formulas.RELATIONS,
    closed_forms: Mapping[str, str] = formulas.CLOSED_FORMS,
    telescoping: str = formulas.TELESCOPING,
    p_shift: str = formulas.P_SHIFT,
) -> CertReport:
    """Replay the elimination symbolically, treating E(n), K(n), L(n) as free.

    Seven identities: every coefficient of k^0..k^6 in the kernel-divided
    telescoping relation vanishes once A..D come from the first-order system
    and the n+1 quantities from its recurrence part.  Three more: the closed
    forms for K, E and D are consistent with the system.
    """
    ns = base_namespace()
    ns.update(E=sym("E"), K=sym("K"), L=sym("L"))
    residuals = []
    checked = []

    A = solve_for(relations["A_rel"], "A", ns)
    B = solve_for(relations["B_rel"], "B", ns)
    C = solve_for(relations["C_rel"], "C", ns)
    D = solve_for(relations["D_rel"], "D", ns)
    L2 = solve_for(relations["L_step"], "L2", ns)
    K2 = solve_for(relations["K_step"], "K2", {**ns, "L2": L2})
    E2 = solve_for(relations["E_step"], "E2", {**ns, "L2": L2, "K2": K2})
    nxt = {"E": E2, "K": K2, "L": L2}
    A1, B1, C1 = (shift_n(x, **nxt) for x in (A, B, C))
    tele = relation(telescoping, {**ns, "A": A, "B": B, "C": C, "D": D, "A1": A1, "B1": B1, "C1": C1})
    coeffs = tele.num.coeffs_in("k")
    for i in range(max(7, len(coeffs))):
        name = f"k^{i}"
        checked.append(name)
        c = coeffs[i] if i < len(coeffs) else MultiPoly.const(0, tele.vars)
        if not c.is_zero():
            residuals.append((name, RatFun(c, tele.den)))

    # closed forms, with P carrying the B0 product
    cns = base_namespace()
    cns.update(E=sym("E"), L=sym("L"), L2=sym("L2"), P=sym("P"))
    Kc = solve_for(closed_forms["K_closed"], "K", cns)
    P2 = solve_for(p_shift, "P2", cns)
    K2c = shift_n(Kc, L=sym("L2"), P=P2)
    n1 = sym("n") + 1
    combo = relation(relations["K_step"], {**cns, "K": Kc, "K2": K2c}) - n1 * relation(
        relations["L_step"], {**cns, "K": Kc}
    )
    Ec = solve_for(closed_forms["E_closed"], "E", cns)
    Dc = solve_for(closed_forms["D_closed"], "D", cns)
    for name, r in (
        ("K_closed vs K_step - n1*L_step", combo),
        ("E_closed vs L_step", relation(relations["L_step"], {**cns, "K": Kc, "E": Ec})),
        ("D_closed vs D_rel", relation(relations["D_rel"], {**cns, "K": Kc, "E": Ec, "D": Dc})),
    ):
        checked.append(name)
        if not r.is_zero():
            residuals.append((name, r))
    return CertReport(not residuals, residuals, checked)


def _check(p: ParamsE):
    p.require_admissible()


def sum_F0(init: InitCond, p: ParamsE, digits: int) -> EvalReport:
    """sum_{k>=0} F(0,k) = sum_{k>=1} (A0 + B0 k + C0 k^2) / (k^4 - e1 k^2 + e2).

    Evaluated through the expansion in zeta values; direct partial sums
    converge only like 1/k.
    """
    _check(p)
    rep = lhs_expansion((init.A0, init.B0, init.C0), p.e1, p.e2, digits)
    return EvalReport(rep.value, rep.terms_used, rep.tail_bound, digits, "wz-f0",
                      {**p.as_dict(), **init.as_dict()})


def _g_terms(init: InitCond, p: ParamsE):
    denom = Fraction(1)
    for st in iter_states(init, p):
        n = st.n
        denom *= sym_product(p.e1, p.e2, n + 1, n + 1)
        yield st.D / denom


def sum_G_n0(init: InitCond, p: ParamsE, digits: int, **kw) -> EvalReport:
    """sum_{n>=0} G(n, 0) = sum D(n) / prod_{m=1}^{n+1} (m^4 - e1 m^2 + e2)."""
    _check(p)
    return sum_series(_g_terms(init, p), digits, "wz-row", params={**p.as_dict(), **init.as_dict()}, **kw)


def diagonal_terms(init: InitCond, p: ParamsE) -> Iterator[Fraction]:
    """F(n, n) + G(n, n+1) for n = 0, 1, ..."""
    for st in iter_states(init, p):
        n = st.n
        yield F_eval(n, n, st, p) + G_eval(n, n + 1, st, p)


def sum_diagonal(init: InitCond, p: ParamsE, digits: int, **kw) -> EvalReport:
    _check(p)
    return sum_series(diagonal_terms(init, p), digits, "wz-diagonal",
                      params={**p.as_dict(), **init.as_dict()}, **kw)


def sum_F0_direct(init: InitCond, p: ParamsE, terms: int, dps: int = 30):
    """Plain partial sum of F(0, k) for k < terms in floating point.

    Converges only like 1/terms; used as a coarse consistency check.
    """
    with mpmath.workdps(dps):
        e1, e2 = mpf_of(p.e1), mpf_of(p.e2)
        a, b, c = mpf_of(init.A0), mpf_of(init.B0), mpf_of(init.C0)
        total = mpmath.mpf(0)
        for k in range(1, terms + 1):
            total += (a + b * k + c * k * k) / (k**4 - e1 * k * k + e2)
        return +total
