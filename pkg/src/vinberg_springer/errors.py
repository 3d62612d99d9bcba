"""Exception types shared across the package."""


class PrecisionExhausted(ArithmeticError):
    """No coefficient below the current horizon decides the answer.

    Raised when a series is indistinguishable from zero below its horizon and
    was not asserted exact.  Callers may retry at a larger horizon.
    """


class Unsupported(Exception):
    """The input lies outside the cases this package can certify."""


class NonCompact(ValueError):
    """The element does not have invertible reduction modulo the uniformizer."""


class ValidationError(ValueError):
    """A payload or argument failed validation."""


class WindowNotSaturated(UserWarning):
    """Enumeration totals still change at the outermost depth shell."""
