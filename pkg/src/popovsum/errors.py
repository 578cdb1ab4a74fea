"""Exception hierarchy shared by every module."""


class PopovSumError(Exception):
    """Base class for all library errors."""


class DomainError(PopovSumError, ValueError):
    """Arguments fall outside the validity domain of an operation."""


class PoleError(DomainError):
    """Argument sits (within tolerance) on a pole of Gamma or a series normalisation."""


class ParamError(PopovSumError, ValueError):
    """An identity received the wrong set of parameters."""


class ConvergenceError(PopovSumError, ArithmeticError):
    """A series hit its term cap before the stopping rule fired.

    ``partial`` holds the partial sum reached and ``n_terms`` the number of
    terms that were added.
    """

    def __init__(self, message, partial=None, n_terms=0):
        super().__init__(message)
        self.partial = partial
        self.n_terms = n_terms


class TableTooShortError(PopovSumError, IndexError):
    """A coefficient table ran out of stored entries."""
