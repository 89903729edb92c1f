"""Exception types shared across the package."""


class TorsionLabError(Exception):
    """Base class for library errors."""


class ParseError(TorsionLabError, ValueError):
    """Malformed instance data or wire-format value."""


class NotAcyclicError(TorsionLabError):
    """A complex is not acyclic over the fraction field."""


class PrecisionError(TorsionLabError, ArithmeticError):
    """A truncated computation has no trusted coefficients left."""


class InconsistentSystemError(TorsionLabError, ArithmeticError):
    """A linear system has no solution."""


class ComplexError(TorsionLabError, ValueError):
    """Differentials have the wrong shapes or do not compose to zero."""
