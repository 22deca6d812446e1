"""Exception taxonomy shared across the package.

Every deliberate failure carries a stable ``code`` string so the CLI can map
it to a machine-readable error object without string matching.
"""

from __future__ import annotations


class IcdofError(Exception):
    """Base class for all errors raised deliberately by this package."""

    code = "internal-error"

    def __init__(self, message: str, **payload):
        super().__init__(message)
        self.payload = payload


class ValidationError(IcdofError):
    """An argument violates a documented precondition."""

    code = "invalid-input"


class ParseError(ValidationError):
    """Malformed scalar syntax or JSON input."""

    code = "parse-error"


class NotRationalError(ValidationError):
    """A symbolic value appeared where an ordered rational is required."""

    code = "not-rational"


class BudgetExceededError(ValidationError):
    """An operation would materialize more atoms than the configured budget."""

    code = "budget-exceeded"


class ConditionStarViolationError(ValidationError):
    """A certified construction was requested on a matrix that fails the
    independence check; ``payload["witness"]`` holds the vanishing combination."""

    code = "condition-star-violated"
