"""Exception types shared across the package."""
from __future__ import annotations


class HypercutError(Exception):
    pass


class NotSubmodular(HypercutError, ValueError):
    """Penalties violate the inequalities required for a nonnegative gadget."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotModelable(HypercutError, ValueError):
    """The fixed four-node basis cannot represent a (possibly submodular) table.

    Distinct from NotSubmodular: the table may be perfectly submodular and
    still fall outside the cone spanned by the basis gadgets.
    """

    def __init__(self, message, coefficients=None, negative=None):
        super().__init__(message)
        self.coefficients = coefficients
        self.negative = negative or {}


class NotReducible(HypercutError, ValueError):
    def __init__(self, edge_index, reason):
        super().__init__(f"edge {edge_index}: {reason}")
        self.edge_index = edge_index
        self.reason = reason


class SizeLimitError(HypercutError):
    """Base for enumeration budgets being exceeded."""


class TooLarge(SizeLimitError):
    pass


class TooManyAux(SizeLimitError):
    pass


class ArityTooLarge(SizeLimitError):
    pass


class ParseError(HypercutError, ValueError):
    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class SeedNotFound(HypercutError, KeyError):
    pass


class SeedsAdjacentWarning(UserWarning):
    pass
