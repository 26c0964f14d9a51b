"""Parameter records shared by the WZ-pair, recurrence and series modules."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .numerics import format_rational, parse_rational


@dataclass(frozen=True)
class ParamsE:
    """Symmetric parameters e1 = a^2 + b^2 and e2 = a^2 b^2."""

    e1: Fraction = Fraction(0)
    e2: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "e1", parse_rational(self.e1))
        object.__setattr__(self, "e2", parse_rational(self.e2))

    @property
    def admissible(self) -> bool:
        """Both roots of t^2 - e1 t + e2 (that is a^2 and b^2) lie in |t| < 1.

        Schur-Cohn (Jury) test for a real quadratic: |e2| < 1 and |e1| < 1 + e2.
        """
        return abs(self.e2) < 1 and abs(self.e1) < 1 + self.e2

    def require_admissible(self) -> "ParamsE":
        if not self.admissible:
            raise DomainError(
                f"parameters e1={self.e1}, e2={self.e2} violate |a|<1, |b|<1"
            )
        return self

    @classmethod
    def from_ab(cls, a: Fraction, b: Fraction) -> "ParamsE":
        a, b = Fraction(a), Fraction(b)
        return cls(a * a + b * b, a * a * b * b)

    def as_dict(self) -> dict:
        return {"e1": format_rational(self.e1), "e2": format_rational(self.e2)}


@dataclass(frozen=True)
class InitCond:
    A0: Fraction = Fraction(0)
    B0: Fraction = Fraction(0)
    C0: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("A0", "B0", "C0"):
            object.__setattr__(self, name, parse_rational(getattr(self, name)))

    def __add__(self, other: "InitCond") -> "InitCond":
        return InitCond(self.A0 + other.A0, self.B0 + other.B0, self.C0 + other.C0)

    def as_dict(self) -> dict:
        return {k: format_rational(getattr(self, k)) for k in ("A0", "B0", "C0")}


@dataclass(frozen=True)
class ParamsXY:
    """x2 = x^2 and y4 = y^4 as exact rationals."""

    x2: Fraction = Fraction(0)
    y4: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "x2", parse_rational(self.x2))
        object.__setattr__(self, "y4", parse_rational(self.y4))

    @property
    def admissible(self) -> bool:
        return abs(self.x2) + abs(self.y4) < 1

    def require_admissible(self) -> "ParamsXY":
        if not self.admissible:
            raise DomainError(f"need |x2| + |y4| < 1, got x2={self.x2}, y4={self.y4}")
        return self

    def to_e(self) -> ParamsE:
        # a^2 + b^2 = x^2 and a^2 b^2 = -y^4 after substituting the radicals
        return ParamsE(self.x2, -self.y4)

    def as_dict(self) -> dict:
        return {"x2": format_rational(self.x2), "y4": format_rational(self.y4)}
