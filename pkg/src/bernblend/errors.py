"""Exception types shared across the package.

All errors that indicate a bad argument subclass ValueError so callers
that do not care about the finer distinction can catch the usual thing.
"""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class SampleError(ValueError):
    """A function could not be sampled at a required abscissa.

    Carries the offending abscissa in ``x``.
    """

    def __init__(self, message: str, x: float):
        super().__init__(message)
        self.x = float(x)


class MinNTooSmall(ValueError):
    """The degree n is too small for the requested patch geometry.

    ``n_min`` is the smallest degree for which the construction succeeds.
    """

    def __init__(self, message: str, n_min: int):
        super().__init__(message)
        self.n_min = int(n_min)


class MembershipError(ValueError):
    """A function/weight pairing violates its declared function class."""


class NumericalError(ArithmeticError):
    """A computation produced a non-finite value where one is not allowed."""
