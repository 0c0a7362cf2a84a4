"""Exception types shared across the package."""


class ConvergenceError(RuntimeError):
    """An iterative computation did not reach its tolerance.

    Carries the last two iterates so callers can inspect how far apart
    they still were.
    """

    def __init__(self, message, last=None, previous=None):
        super().__init__(message)
        self.last = last
        self.previous = previous


class ClosedFormUnavailable(ValueError):
    """Closed-form evaluation was requested for a model that has none."""


class DegenerateFunctionError(ValueError):
    """The input function is degenerate for the operation (e.g. constant)."""


class BracketError(RuntimeError):
    """A bisection bracket is invalid; carries the measured endpoint values."""

    def __init__(self, message, lo_value=None, hi_value=None):
        super().__init__(message)
        self.lo_value = lo_value
        self.hi_value = hi_value


class SearchError(RuntimeError):
    """Every restart of a maximization failed."""


class SingularIntegrandWarning(UserWarning):
    """The integrand is nearly singular on the quadrature grid."""
