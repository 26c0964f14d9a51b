from fractions import Fraction

import mpmath
import pytest

from zetawz.errors import DomainError, ParseError, PoleError
from zetawz.numerics import (
    RealD,
    binomial,
    format_rational,
    parse_rational,
    pochhammer,
    sym_factor,
    sym_product,
    to_real,
    zeta_reference,
)

ZETA3_50 = "1.2020569031595942853997381615114499907649862923405"


def test_binomial_small_cases():
    assert binomial(4, 2) == 6
    assert binomial(2, 1) == 2
    assert binomial(10, 5) == 252


def test_binomial_matches_pascal_triangle():
    row = [1]
    for n in range(1, 30):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
        assert [binomial(n, k) for k in range(n + 1)] == row


def test_binomial_rejects_negative():
    with pytest.raises(DomainError):
        binomial(-1, 0)


def test_pochhammer():
    assert pochhammer(Fraction(1, 2), 3) == Fraction(1, 2) * Fraction(3, 2) * Fraction(5, 2)
    assert pochhammer(5, 0) == 1


def test_sym_product_examples():
    assert sym_product(0, 0, 1, 3) == 1296
    assert sym_product(Fraction(1, 4), 0, 1, 1) == Fraction(3, 4)
    assert sym_product(Fraction(7), Fraction(3), 2, 1) == 1


def test_sym_factor_is_symmetric_product():
    a2, b2 = Fraction(1, 9), Fraction(-1, 4)
    for m in range(1, 8):
        assert sym_factor(a2 + b2, a2 * b2, m) == (m * m - a2) * (m * m - b2)


def test_sym_product_pole():
    # a^2 = 1 puts a zero factor at m = 1
    with pytest.raises(PoleError):
        sym_product(Fraction(1), Fraction(0), 1, 3)


@pytest.mark.parametrize("s,closed", [(2, lambda: mpmath.pi**2 / 6), (4, lambda: mpmath.pi**4 / 90)])
def test_zeta_reference_even_closed_forms(s, closed):
    ref = zeta_reference(s, 30)
    with mpmath.workdps(50):
        assert abs(ref.value - closed()) < mpmath.mpf(10) ** -30


def test_zeta_reference_zeta3_50_digits():
    assert str(zeta_reference(3, 50)) == ZETA3_50


@pytest.mark.parametrize("s", [3, 5, 7, 9, 11, 21])
def test_zeta_reference_against_mpmath(s):
    ref = zeta_reference(s, 60)
    with mpmath.workdps(80):
        assert abs(ref.value - mpmath.zeta(s)) < mpmath.mpf(10) ** -60


def test_zeta_reference_direct_sum_with_integral_tail():
    # sum_{n<N} 1/n^3 plus the midpoint-corrected integral tail 1/(2(N-1/2)^2)
    with mpmath.workdps(40):
        N = 10**5
        direct = mpmath.fsum(mpmath.mpf(1) / mpmath.mpf(n) ** 3 for n in range(1, N))
        direct += 1 / (2 * (mpmath.mpf(N) - mpmath.mpf(1) / 2) ** 2)
        assert abs(zeta_reference(3, 30).value - direct) < mpmath.mpf(10) ** -14


def test_to_real_formatting():
    assert str(to_real(Fraction(5, 4), 10)) == "1.250000000"
    assert str(to_real(Fraction(1, 3), 5)) == "0.33333"
    assert str(to_real(Fraction(77, 64), 10)) == "1.203125000"


def test_reald_guard_digits():
    with pytest.raises(ValueError):
        RealD(mpmath.mpf(1), 10, guard=3)


@pytest.mark.parametrize("text,value", [("3", Fraction(3)), ("-1/9", Fraction(-1, 9)), ("+2/4", Fraction(1, 2))])
def test_parse_rational_accepts(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["0.5", "1e3", "1/0", "1/-3", "abc", ""])
def test_parse_rational_rejects(text):
    with pytest.raises((ParseError, ValueError)):
        parse_rational(text)


def test_parse_rational_rejects_float_objects():
    with pytest.raises((ParseError, TypeError, ValueError)):
        parse_rational(0.5)


def test_format_round_trip():
    for q in (Fraction(0), Fraction(-7, 3), Fraction(5)):
        assert parse_rational(format_rational(q)) == q


def test_check_digits_bounds():
    from zetawz.errors import BudgetError
    from zetawz.numerics import check_digits

    assert check_digits(30) == 30
    with pytest.raises(DomainError):
        check_digits(0)
    with pytest.raises(BudgetError):
        check_digits(5000)
