"""Exception types shared across the package."""


class McwaveError(Exception):
    """Base class for all mcwave errors."""


class InvalidDimensionError(McwaveError, ValueError):
    """A vector/matrix dimension does not match what the operation requires."""


class InvalidParameterError(McwaveError, ValueError):
    """A configuration parameter is out of its valid range."""


class SingularMatrixError(McwaveError, ValueError):
    """A matrix that must be inverted is singular (or numerically so).

    Carries ``condition``, a rough condition indicator estimated from the
    LU pivots (or +inf when a pivot is exactly zero).
    """

    def __init__(self, message, condition=float("inf")):
        super().__init__(message)
        self.condition = condition
