"""Exception types shared across the package."""


class HahnOscError(Exception):
    """Base class for all package-specific errors."""


class DomainError(HahnOscError):
    """An index or parameter is outside the admissible range."""


class PoleInRangeError(HahnOscError):
    """A denominator parameter of a terminating series hits zero before termination."""


class BalanceError(HahnOscError):
    """Parameters of a transformation do not satisfy the required balance condition."""


class DegenerateError(HahnOscError):
    """The requested operation is ill-posed for the given (degenerate) input."""


class RangeError(HahnOscError):
    """Argument outside the numerically supported evaluation range."""


class ConvergenceError(HahnOscError):
    """Iterative eigensolver failed to converge; the failing index is reported."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"no convergence for eigenvalue index {index}")


class VerificationError(HahnOscError):
    """A built-in cross-check between two independent evaluation routes failed."""
