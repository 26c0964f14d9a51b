"""Apery-like zeta series from Markov-WZ pairs, evaluated in exact arithmetic."""

from .errors import (
    BudgetError,
    DivergenceError,
    DomainError,
    ParseError,
    PoleError,
    UndefinedRatioError,
    ZetaWZError,
)
from .genfunc import BiSeries, bivariate_lhs, coeff_weight, rhs_taylor
from .mpoly import MultiPoly, RatFun, poly_arith, poly_coeffs_in, poly_substitute
from .numerics import RealD, binomial, parse_rational, pochhammer, sym_product, zeta_reference
from .params import InitCond, ParamsE, ParamsXY
from .recurrence import LSequence, d_coeff, derive_l_recurrence, l_extend, ratio_estimate
from .series import (
    ag_rhs,
    cb_rhs,
    convergence_profile,
    koecher_rhs,
    markov_zeta4_series,
    thm1_rhs,
    thm2_rhs,
    zeta7_series,
)
from .summation import EvalReport
from .wz_pair import (
    certify_numeric,
    certify_symbolic,
    coeff_state,
    kernel_H,
    sum_diagonal,
    sum_F0,
    sum_G_n0,
)

__version__ = "0.1.0"
