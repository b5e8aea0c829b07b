"""Exception hierarchy shared by all modules."""


class FracIneqError(Exception):
    """Base class for errors raised by fracineq."""


class DomainError(FracIneqError, ValueError):
    """An argument lies outside the domain of the operation."""


class RangeOverflowError(FracIneqError, OverflowError):
    """A result does not fit in double precision."""


class SpecParseError(FracIneqError, ValueError):
    """Malformed integrand spec string.

    ``position`` is the 0-based character offset where parsing failed.
    """

    def __init__(self, message, spec, position):
        super().__init__(f"{message} at position {position} in {spec!r}")
        self.spec = spec
        self.position = position


class QuadratureError(FracIneqError, RuntimeError):
    """Node computation failed to converge."""


class QuadratureWarning(UserWarning):
    """Adaptive doubling hit ``n_max`` before meeting ``rel_tol``."""
