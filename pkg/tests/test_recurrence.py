import math
from fractions import Fraction

import pytest

from zetawz import formulas
from zetawz.errors import DomainError, UndefinedRatioError
from zetawz.mpoly import parse
from zetawz.params import InitCond, ParamsE
from zetawz.recurrence import (
    LSequence,
    d_coeff,
    derive_l_recurrence,
    iter_d,
    p_eval,
    q_eval,
    ratio_estimate,
)

ZERO = ParamsE(0, 0)
GENERIC = ParamsE(Fraction(1, 3), Fraction(1, 10))


def test_p_values_at_origin():
    assert p_eval(1, 0, 0) == 420
    assert p_eval(0, 0, 0) == 0


def test_p_specializes_to_zeta4_coefficient():
    for n in range(12):
        assert p_eval(n, 0, 0) == 5 * n**2 * (n + 1) ** 2 * (6 * n**3 + 9 * n**2 + 5 * n + 1)


def test_q_values():
    assert all(q_eval(n, 0, 0) == n**8 for n in range(10))
    assert q_eval(2, 0, 0) == 256
    assert q_eval(1, 1, 0) == 0


def test_p_symbolic_is_polynomial_in_n_e():
    p = p_eval(None)
    assert p.degree("n") == 7
    assert p.evaluate({"n": 1, "e1": 0, "e2": 0}) == 420


def test_markov_initial_values_and_first_step():
    seq = LSequence(InitCond(1, 0, 0), ZERO)
    assert seq[0] == 0 and seq[1] == Fraction(1, 3)
    assert seq[2] == Fraction(-4, 9)


def test_markov_sequence_satisfies_specialized_recurrence():
    # 4(4n+3)(4n+5) L(n+1) + 2(n+1)^3 (6n^3+9n^2+5n+1) L(n) - n^7 (n+1)^3 L(n-1) = 0
    seq = LSequence(InitCond(1, 0, 0), ZERO)
    for n in range(1, 40):
        lhs = (
            4 * (4 * n + 3) * (4 * n + 5) * seq[n + 1]
            + 2 * (n + 1) ** 3 * (6 * n**3 + 9 * n**2 + 5 * n + 1) * seq[n]
            - n**7 * (n + 1) ** 3 * seq[n - 1]
        )
        assert lhs == 0


def test_c0_initial_values():
    seq = LSequence(InitCond(0, 0, 1), ZERO)
    assert seq[0] == 1 and seq[1] == Fraction(-1, 30)


def test_b0_only_gives_zero_sequence():
    seq = LSequence(InitCond(0, 1, 0), GENERIC)
    assert all(seq[n] == 0 for n in range(60))


def test_residual_zero_generic():
    seq = LSequence(InitCond(2, 5, -3), GENERIC)
    assert all(seq.residual(n) == 0 for n in range(1, 80))


def test_linearity_in_init():
    a, b = InitCond(1, 0, 2), InitCond(-3, 1, 1)
    sa, sb, sab = LSequence(a, GENERIC), LSequence(b, GENERIC), LSequence(a + b, GENERIC)
    assert all(sab[n] == sa[n] + sb[n] for n in range(30))


def test_d_examples():
    assert d_coeff(1, LSequence(InitCond(0, 1, 0), ZERO)).value == Fraction(5, 4)
    assert d_coeff(2, LSequence(InitCond(0, 1, 0), ZERO)).value == Fraction(-5, 6)
    assert d_coeff(1, LSequence(InitCond(1, 0, 0), ZERO)).value == Fraction(5, 6)


def test_d_gives_apery_terms():
    gen = iter_d(LSequence(InitCond(0, 1, 0), ZERO))
    for n in range(1, 15):
        d = next(gen).value
        term = d / math.factorial(n) ** 4
        assert term == Fraction(5 * (-1) ** (n - 1), 2 * n**3 * math.comb(2 * n, n))


def test_d_iterator_matches_direct():
    seq = LSequence(InitCond(1, 1, 1), GENERIC)
    gen = iter_d(seq)
    for n in range(1, 12):
        assert next(gen) == d_coeff(n, seq)


def test_d_rejects_zero_index():
    with pytest.raises(DomainError):
        d_coeff(0, LSequence(InitCond(1, 0, 0), ZERO))


@pytest.mark.parametrize("init", [InitCond(1, 0, 0), InitCond(0, 0, 1)])
def test_ratio_estimate_range(init):
    r = float(ratio_estimate(LSequence(init, ZERO), 300))
    assert 0.20 <= r <= 0.26


def test_ratio_estimate_undefined_for_zero_sequence():
    with pytest.raises(UndefinedRatioError):
        ratio_estimate(LSequence(InitCond(0, 1, 0), ZERO), 50)


def test_degenerate_leading_coefficient():
    # 5n^2 - 2e1 = 0 at n = 1 when e1 = 5/2
    seq = LSequence(InitCond(1, 0, 0), ParamsE(Fraction(5, 2), 0))
    with pytest.raises(DomainError):
        seq[2]


def test_derivation_reproduces_stated_p_q():
    rep = derive_l_recurrence()
    assert rep.verdict, rep.residuals
    assert rep.b0_residual.is_zero()
    for n in range(6):
        for e1, e2 in ((0, 0), (Fraction(1, 3), Fraction(1, 10)), (Fraction(-2, 7), Fraction(5, 3))):
            pt = {"n": n, "e1": e1, "e2": e2}
            assert rep.p_derived.evaluate(pt) == p_eval(n, e1, e2)
            assert rep.q_derived.evaluate(pt) == q_eval(n, e1, e2)


def test_derived_p_specializes_to_zeta4_coefficient():
    rep = derive_l_recurrence()
    p0 = rep.p_derived.substitute({"e1": 0, "e2": 0})
    expected = parse("5*n^2*(n+1)^2*(6*n^3+9*n^2+5*n+1)", {}, rep.p_derived.vars)
    assert p0 == expected.substitute({})


@pytest.mark.parametrize(
    "which,old,new",
    [("p", "145 - 52", "145 - 51"), ("p", "105*n^6", "104*n^6"), ("q", "30*a2*b2", "31*a2*b2")],
)
def test_derivation_detects_mutated_stated_polys(which, old, new):
    p_text, q_text = formulas.P_POLY, formulas.Q_POLY
    if which == "p":
        assert old in p_text
        p_text = p_text.replace(old, new, 1)
    else:
        assert old in q_text
        q_text = q_text.replace(old, new, 1)
    assert not derive_l_recurrence(p_text=p_text, q_text=q_text).verdict


def test_derivation_detects_mutated_relation():
    rel = dict(formulas.RELATIONS)
    assert "86*a2*b2" in rel["E_step"]
    rel["E_step"] = rel["E_step"].replace("86*a2*b2", "85*a2*b2")
    assert not derive_l_recurrence(relations=rel).verdict
