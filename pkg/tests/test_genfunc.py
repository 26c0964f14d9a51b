from fractions import Fraction

import mpmath
import pytest

from zetawz.errors import BudgetError, DomainError
from zetawz.genfunc import (
    BiSeries,
    bivariate_lhs,
    coeff_weight,
    iter_rhs_series,
    lhs_expansion,
    rhs_taylor,
)
from zetawz.numerics import zeta_reference
from zetawz.params import ParamsXY
from zetawz.series import cb_rhs, koecher_rhs, thm2_rhs, thm2_terms, zeta7_series


def test_coeff_weight():
    assert coeff_weight(0, 0) == 1
    assert coeff_weight(1, 1) == 2
    assert coeff_weight(2, 1) == 3


def test_lhs_at_origin_is_zeta3():
    rep = bivariate_lhs(ParamsXY(0, 0), 40)
    with mpmath.workdps(60):
        assert abs(rep.value.value - mpmath.zeta(3)) < mpmath.mpf(10) ** -40


def test_lhs_against_digamma_closed_form():
    # sum k/(k^2 - t) - 1/k = -(psi(1-r) + psi(1+r))/2 - gamma with r^2 = t
    x2 = Fraction(1, 4)
    with mpmath.workdps(50):
        r = mpmath.mpf(1) / 2
        # y4 = 0: k/(k^4 - x2 k^2) = (k/(k^2 - x2) - 1/k) / x2
        closed = 4 * (-(mpmath.digamma(1 - r) + mpmath.digamma(1 + r)) / 2 - mpmath.euler)
        assert abs(bivariate_lhs(ParamsXY(x2, 0), 30).value.value - closed) < mpmath.mpf(10) ** -30


def test_lhs_against_mpmath_nsum():
    px = ParamsXY(Fraction(1, 9), Fraction(1, 16))
    with mpmath.workdps(40):
        x2, y4 = mpmath.mpf(1) / 9, mpmath.mpf(1) / 16
        oracle = mpmath.nsum(lambda k: k / (k**4 - x2 * k * k - y4), [1, mpmath.inf])
        assert abs(bivariate_lhs(px, 30).value.value - oracle) < mpmath.mpf(10) ** -30


def test_lhs_matches_series():
    px = ParamsXY(Fraction(1, 9), Fraction(1, 16))
    lhs = bivariate_lhs(px, 30).value.value
    tol = mpmath.mpf(10) ** -30
    assert abs(lhs - thm2_rhs(px, 30).value.value) < tol
    assert abs(lhs - cb_rhs(px, 30).value.value) < tol
    assert abs(bivariate_lhs(ParamsXY(Fraction(1, 4), 0), 30).value.value - koecher_rhs(Fraction(1, 4), 30).value.value) < tol


def test_lhs_expansion_general_weights():
    # weights (1, 0, 0) at e = 0 give zeta(4); (0, 0, 1) give zeta(2)
    with mpmath.workdps(50):
        assert abs(lhs_expansion((1, 0, 0), 0, 0, 30).value.value - mpmath.zeta(4)) < mpmath.mpf(10) ** -30
        assert abs(lhs_expansion((0, 0, 1), 0, 0, 30).value.value - mpmath.zeta(2)) < mpmath.mpf(10) ** -30


def test_lhs_domain():
    with pytest.raises(DomainError):
        bivariate_lhs(ParamsXY(Fraction(1, 2), Fraction(1, 2)), 10)


def test_biseries_inverse():
    s = BiSeries(3, 2)
    s.c[0][0], s.c[1][0], s.c[0][1], s.c[1][1] = Fraction(2), Fraction(1), Fraction(-3), Fraction(5)
    prod = s * s.inverse()
    for i in range(4):
        for j in range(3):
            assert prod[i, j] == (1 if (i, j) == (0, 0) else 0)


def test_biseries_dot_matches_truncated_evaluation():
    s = BiSeries(2, 1)
    s.c[0][0], s.c[2][1] = Fraction(1), Fraction(3)
    assert s.dot(Fraction(1, 2), Fraction(1, 3)) == 1 + Fraction(3, 4) * Fraction(1, 3)


def test_expanded_terms_reduce_to_series_terms_at_origin():
    gen = iter_rhs_series(1, 1)
    exact = thm2_terms(ParamsXY(0, 0))
    for _ in range(6):
        assert next(gen)[0, 0] == next(exact)


def test_expanded_terms_match_numeric_difference_quotient():
    # the x2 coefficient of each term is its exact derivative at the origin;
    # a symmetric difference in exact arithmetic is off only by O(h^2)
    gen = iter_rhs_series(1, 0)
    h = Fraction(1, 10**6)
    plus, minus = thm2_terms(ParamsXY(h, 0)), thm2_terms(ParamsXY(-h, 0))
    for _ in range(4):
        c = next(gen)[1, 0]
        dq = (next(plus) - next(minus)) / (2 * h)
        assert abs(c - dq) < Fraction(1, 10**9)


def test_taylor_table_values():
    tab = rhs_taylor(25, (1, 1))
    tol = mpmath.mpf(10) ** -20
    for (i, j), s, w in (((0, 0), 3, 1), ((1, 0), 5, 1), ((0, 1), 7, 1), ((1, 1), 9, 2)):
        with mpmath.workdps(40):
            assert abs(tab.value(i, j, 30).value - w * zeta_reference(s, 30).value) < tol


def test_taylor_zeta3_only():
    tab = rhs_taylor(20, (0, 0))
    with mpmath.workdps(40):
        assert abs(tab.value(0, 0, 30).value - zeta_reference(3, 30).value) < mpmath.mpf(10) ** -25


def test_zeta7_formula_matches_y4_coefficient():
    tab = rhs_taylor(25, (0, 1))
    with mpmath.workdps(40):
        assert abs(zeta7_series(30).value.value - tab.value(0, 1, 30).value) < mpmath.mpf(10) ** -20


def test_budget_errors():
    with pytest.raises(BudgetError):
        rhs_taylor(10, (9, 9))
    with pytest.raises(BudgetError):
        rhs_taylor(0, (1, 1))
