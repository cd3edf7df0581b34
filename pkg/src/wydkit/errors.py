"""Exception hierarchy shared by all wydkit modules."""


class WYDError(Exception):
    """Base class for every error raised by wydkit."""


class InputError(WYDError, ValueError):
    """Malformed or out-of-range input (shape mismatch, bad beta, ...)."""


class NotHermitianError(InputError):
    pass


class NotPositiveError(InputError):
    pass


class NotNormalizedError(InputError):
    pass


class DomainError(InputError):
    """A function evaluated to NaN or infinity on a spectral point."""


class NumericalError(WYDError, ArithmeticError):
    """Eigensolver residual or other floating-point failure."""


class ConsistencyError(NumericalError):
    """Two independent routes to the same quantity disagree."""
