"""Exception hierarchy shared across the package.

The CLI maps these to exit codes: ValidationError -> 2, ScaleCapError -> 3,
InternalInvariantError -> 4.
"""


class BudgetMatroidError(Exception):
    """Base class for all package errors."""


class ValidationError(BudgetMatroidError):
    """Malformed input data or out-of-range parameter.

    ``path`` points at the offending field (JSON-path style) when the error
    originates from instance parsing.
    """

    def __init__(self, message, path=None):
        self.path = path
        if path is not None:
            message = f"{path}: {message}"
        super().__init__(message)


class PreconditionError(BudgetMatroidError):
    """An operation was called with arguments violating its contract."""


class ScaleCapError(BudgetMatroidError):
    """An exhaustive routine refused to run above its configured size cap."""


class InternalInvariantError(BudgetMatroidError):
    """A property guaranteed by matroid theory failed at runtime.

    Signals either a non-matroid oracle or a solver bug; never caught
    internally.
    """
