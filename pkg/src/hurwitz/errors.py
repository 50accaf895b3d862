"""Exception hierarchy.  Each class carries the CLI exit code it maps to."""

from __future__ import annotations

from .perm import PermutationError


class HurwitzError(Exception):
    exit_code = 4


class ParseError(HurwitzError, ValueError):
    exit_code = 1


class BudgetExceeded(HurwitzError):
    """A configured ceiling would be crossed; nothing is silently truncated."""

    exit_code = 2

    def __init__(self, what: str, estimate: float, limit: float):
        self.what = what
        self.estimate = estimate
        self.limit = limit
        super().__init__(f"{what}: estimate {estimate:.4g} exceeds limit {limit:.4g}")


class ExpectationMismatch(HurwitzError):
    exit_code = 3


class InvariantViolation(HurwitzError):
    exit_code = 4


class NotRepresentable(HurwitzError, ValueError):
    """No explicit representative is known for the requested parameters."""

    exit_code = 1


__all__ = [
    "HurwitzError",
    "ParseError",
    "BudgetExceeded",
    "ExpectationMismatch",
    "InvariantViolation",
    "NotRepresentable",
    "PermutationError",
]
