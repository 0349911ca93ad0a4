"""Exception hierarchy shared across the package."""


class WeakShanksError(Exception):
    """Base class for all package errors."""


class InvalidParameters(WeakShanksError, ValueError):
    """Raised for parameters outside the domain of an operation."""


class NumericalError(WeakShanksError, ArithmeticError):
    """Base class for numerical failures (CLI exit code 3)."""


class DivergentArgument(NumericalError):
    """The hypergeometric series does not converge (or converges too slowly) at this argument."""


class NonConvergence(NumericalError):
    """An iteration hit its budget before its stopping rule fired."""


class SingularMatrix(NumericalError):
    """Moment matrix could not be factored. Indicates a bug for valid parameters."""


class DegenerateSystem(NumericalError):
    """Closed-form degree-1 system has a nonpositive determinant."""


class EigFailure(NumericalError):
    """Eigenvalue computation for a Gauss rule failed."""


class ConsistencyError(NumericalError):
    """Two routes to the same quantity disagree beyond tolerance."""
