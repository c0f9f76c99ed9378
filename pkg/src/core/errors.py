class GieError(Exception):
    """Base class for errors raised by the GIE toolkit."""


class NonPhysicalStateError(GieError, ValueError):
    """The covariance matrix does not describe a physical quantum state."""


class NotApplicableError(GieError, ValueError):
    """An operation was called outside the class of states it is defined for."""


class NumericalError(GieError, ArithmeticError):
    """A numerical step failed (singular Schur complement, negative discriminant, ...)."""
