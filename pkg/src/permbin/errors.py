"""Exception types raised across the package."""


class PermbinError(Exception):
    """Base class for all package errors."""


class CompositeCharacteristic(PermbinError, ValueError):
    pass


class FieldTooLarge(PermbinError, ValueError):
    pass


class DivisionByZero(PermbinError, ZeroDivisionError):
    pass


class NotCoprimeFilter(PermbinError, ValueError):
    """The binomial fails the degree-gcd filter, so it cannot be canonicalized."""


class HypothesisViolated(PermbinError, ValueError):
    pass


class BadParameters(PermbinError, ValueError):
    pass


class RefutationFailed(PermbinError, RuntimeError):
    """No candidate exponent produced a Hermite violation.

    Never expected for valid inputs; it would point at a bug in poly/permtest.
    """


class TheoremViolation(PermbinError, RuntimeError):
    """A permutation binomial with a forbidden gcd was found."""

    def __init__(self, record, report=None):
        super().__init__(f"forbidden permutation binomial: {record}")
        self.record = record
        self.report = report


class PolySyntaxError(PermbinError, ValueError):
    """Parse failure in a polynomial expression; ``offset`` is the byte offset."""

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
