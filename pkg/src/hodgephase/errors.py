"""Exception hierarchy shared across the package."""


class CliffordError(Exception):
    """Base class for every error raised by hodgephase."""


class SignatureMismatch(CliffordError, ValueError):
    pass


class GradeOutOfRange(CliffordError, ValueError):
    pass


class GradeMismatch(CliffordError, ValueError):
    pass


class NonEuclideanSignature(CliffordError, ValueError):
    pass


class UnsupportedSignature(CliffordError, ValueError):
    pass


class NullBlade(CliffordError, ZeroDivisionError):
    """Raised when a blade with zero squared norm has to be inverted."""


class NotABlade(CliffordError, ValueError):
    """Raised when an operation needs a blade (A A^dagger scalar) but got something else."""


class UnexpectedForm(CliffordError, RuntimeError):
    """An internal consistency check failed; this points at a bug, not at user input."""


class InvalidSplit(CliffordError, ValueError):
    pass


class UnclassifiedPair(CliffordError, ValueError):
    pass


class PairMismatch(CliffordError, ValueError):
    pass


class DimensionTooLarge(CliffordError, ValueError):
    pass


class ParseError(CliffordError, ValueError):
    pass


class NonFiniteState(CliffordError, ArithmeticError):
    """Integration produced inf/nan. ``trajectory`` holds the samples up to that point."""

    def __init__(self, message, trajectory=None):
        super().__init__(message)
        self.trajectory = trajectory
