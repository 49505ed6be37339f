"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class UnsupportedParameter(ValueError):
    """A parameter combination is valid mathematically but not implemented."""


class NumericalFailure(RuntimeError):
    """A numerical routine did not reach its tolerance.

    Attributes
    ----------
    estimate : object
        Best available estimate when the routine stopped.
    error : float
        Error bound or residual associated with ``estimate``.
    """

    def __init__(self, message, estimate=None, error=float("nan")):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class UsageError(ValueError):
    """A request combines options that do not fit together."""
