"""Series accumulation with an empirical geometric tail bound."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

import mpmath

from .errors import DivergenceError
from .numerics import RealD, mpf_of, working_dps

RATIO_WINDOW = 10
RATIO_CAP = mpmath.mpf("0.9")
DIVERGENCE_STREAK = 50
DEFAULT_MAX_TERMS = 200_000


@dataclass(frozen=True)
class EvalReport:
    value: RealD
    terms_used: int
    tail_bound: mpmath.mpf
    digits: int
    series_id: str
    params: dict = field(default_factory=dict)

    @property
    def value_str(self) -> str:
        return str(self.value)

    def as_dict(self) -> dict:
        return {
            "series": self.series_id,
            "params": dict(self.params),
            "digits": self.digits,
            "value": self.value_str,
            "terms_used": self.terms_used,
            "tail_bound": mpmath.nstr(self.tail_bound, 5),
        }


def tail_estimate(last_abs, ratios) -> mpmath.mpf:
    """|last| * r / (1 - r) with r = min(2 * max(ratios), 0.9)."""
    rho = min(2 * max(ratios), RATIO_CAP)
    return last_abs * rho / (1 - rho)


def sum_series(
    terms: Iterable[Fraction],
    digits: int,
    series_id: str,
    *,
    params: dict | None = None,
    fixed_terms: int | None = None,
    max_terms: int = DEFAULT_MAX_TERMS,
    min_terms: int = RATIO_WINDOW + 1,
) -> EvalReport:
    """Accumulate exact terms at ``digits`` + guard working precision.

    Stops once the ratio-based tail estimate drops below 10^-(digits+5),
    or after exactly ``fixed_terms`` terms when given.  A run of 50
    consecutive term ratios above 0.9 raises :class:`DivergenceError`.
    """
    dps = working_dps(digits)
    with mpmath.workdps(dps):
        target = mpmath.mpf(10) ** (-(digits + 5))
        total = mpmath.mpf(0)
        ratios: deque = deque(maxlen=RATIO_WINDOW)
        prev_abs = None
        streak = zeros = 0
        bound = mpmath.inf
        used = 0
        it: Iterator[Fraction] = iter(terms)
        for used, t in enumerate(it, 1):
            tv = mpf_of(t)
            total += tv
            a = abs(tv)
            if a == 0:
                zeros += 1
            else:
                zeros = 0
                if prev_abs:
                    r = a / prev_abs
                    ratios.append(r)
                    streak = streak + 1 if r > RATIO_CAP else 0
                    if streak >= DIVERGENCE_STREAK and fixed_terms is None:
                        raise DivergenceError(
                            f"{series_id}: term ratio above 0.9 for {streak} consecutive terms"
                        )
                prev_abs = a
            if fixed_terms is not None:
                if used >= fixed_terms:
                    break
                continue
            if zeros >= RATIO_WINDOW and used >= min_terms:
                bound = mpmath.mpf(0)
                break
            if len(ratios) == RATIO_WINDOW and used >= min_terms and zeros == 0:
                bound = tail_estimate(a, ratios)
                if bound < target:
                    break
            if used >= max_terms:
                raise DivergenceError(f"{series_id}: no convergence within {max_terms} terms")
        if fixed_terms is not None and len(ratios):
            bound = tail_estimate(prev_abs or mpmath.mpf(0), ratios)
        return EvalReport(RealD(+total, digits), used, bound, digits, series_id, dict(params or {}))


def partial_sums(terms: Iterable[Fraction], count: int, dps: int) -> list:
    """First ``count`` partial sums as mpf at ``dps`` working digits."""
    out = []
    with mpmath.workdps(dps):
        total = mpmath.mpf(0)
        for i, t in enumerate(terms):
            if i >= count:
                break
            total += mpf_of(t)
            out.append(+total)
    return out
