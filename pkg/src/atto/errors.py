"""Exception hierarchy shared by all atto modules."""


class AttoError(Exception):
    """Base class for all errors raised by this package."""


class NotDivisible(AttoError):
    """Raised when an inner function does not divide another."""


class ConstantInner(AttoError):
    """Raised when a nonconstant inner function is required."""


class GridMismatch(AttoError):
    """Raised when two grid functions live on different grids."""


class NyquistViolation(AttoError):
    """Raised when a symbol carries too much high-frequency content for its grid."""


class OutsideDisk(AttoError):
    """Raised when a point expected in the open unit disk lies outside it."""


class DimensionMismatch(AttoError):
    """Raised when matrix or vector dimensions are incompatible."""


class SingularSystem(AttoError):
    """Raised when a recovery linear system is numerically degenerate."""


class QuotientConstant(AttoError):
    """Raised when theta/alpha is constant but a nonconstant quotient is required."""


class NotInClass(AttoError):
    """Raised when a matrix is not a truncated Toeplitz operator between the given spaces."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
