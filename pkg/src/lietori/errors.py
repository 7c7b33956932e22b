"""Exception types shared across the package.

The CLI maps these onto exit codes: ParameterError -> 2, BudgetError -> 3.
"""


class ParameterError(ValueError):
    """An argument is outside the domain an operation accepts."""


class BudgetError(RuntimeError):
    """An enumeration or field construction would exceed its size budget."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class UnsupportedError(ParameterError):
    """The operation has no shipped route for this input."""


class VerificationFailure(AssertionError):
    """A matrix-level check did not hold."""

    def __init__(self, check, message):
        super().__init__(f"{check}: {message}")
        self.check = check
