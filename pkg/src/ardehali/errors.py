"""Exception types. Every error carries a stable ``code`` string."""


class ArdehaliError(Exception):
    code = "ERROR"


class NonUnitDirectionError(ArdehaliError, ValueError):
    code = "NON_UNIT_DIRECTION"


class DimensionOverflowError(ArdehaliError, MemoryError):
    code = "DIMENSION_OVERFLOW"


class DimensionMismatchError(ArdehaliError, ValueError):
    code = "DIMENSION_MISMATCH"


class NonHermitianResultError(ArdehaliError, ArithmeticError):
    code = "NON_HERMITIAN_RESULT"


class NoConvergenceError(ArdehaliError, ArithmeticError):
    code = "NO_CONVERGENCE"

    def __init__(self, message, residual=None, iterations=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class OutOfRangeError(ArdehaliError, ValueError):
    code = "OUT_OF_RANGE"


class EnumerationTooLargeError(ArdehaliError, ValueError):
    code = "ENUMERATION_TOO_LARGE"


class InvalidDistributionError(ArdehaliError, ValueError):
    code = "INVALID_DISTRIBUTION"


class NotAnticommutingError(ArdehaliError, ValueError):
    code = "NOT_ANTICOMMUTING"


class DegenerateCrossError(ArdehaliError, ValueError):
    code = "DEGENERATE_CROSS"


class NotBalancedError(ArdehaliError, ValueError):
    code = "NOT_BALANCED"


class InvalidStateError(ArdehaliError, ValueError):
    code = "INVALID_STATE"
