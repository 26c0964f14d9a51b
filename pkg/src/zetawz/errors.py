"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes, so the class of an error is part of
the public contract.
"""


class ZetaWZError(Exception):
    """Base class for all library errors."""


class DomainError(ZetaWZError, ValueError):
    """Parameters outside the region where an identity or series applies."""


class PoleError(DomainError):
    """A factor m^4 - e1*m^2 + e2 (or similar) vanished."""

    def __init__(self, m, message=None):
        self.m = m
        super().__init__(message or f"pole: factor vanishes at m={m}")


class BudgetError(DomainError):
    """Requested truncation order or term count exceeds the supported budget."""


class DivergenceError(ZetaWZError):
    """The running term-ratio estimate indicates the series does not converge."""


class UndefinedRatioError(ZetaWZError, ArithmeticError):
    """Ratio diagnostic requested for a vanishing sequence value."""


class ParseError(ZetaWZError, ValueError):
    """Malformed rational literal or polynomial expression."""
