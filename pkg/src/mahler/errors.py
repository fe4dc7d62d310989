"""Exception hierarchy shared across the package."""


class MahlerError(Exception):
    """Base class for all package errors."""


class DomainError(MahlerError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class SizeError(MahlerError, ValueError):
    """A requested construction exceeds the configured size cap."""


class UndersamplingError(MahlerError, ValueError):
    """The sample grid is too coarse for the polynomial degree."""


class ConstructionError(MahlerError, RuntimeError):
    """A required node partition could not be built."""


class ConvergenceError(MahlerError, RuntimeError):
    """An iterative procedure failed to converge.

    Carries the best estimate found so far in ``best`` and diagnostic
    fields in ``info``.
    """

    def __init__(self, message, best=None, **info):
        super().__init__(message)
        self.best = best
        self.info = info
