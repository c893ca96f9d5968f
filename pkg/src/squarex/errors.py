"""Exception hierarchy shared by all squarex modules."""


class SquarexError(ValueError):
    """Base class for input and contract errors raised by squarex."""


class FieldError(SquarexError):
    """Bad field parameters: non-prime p, reducible modulus, word size exceeded."""


class ContextMismatchError(SquarexError):
    """Operands belong to different fields."""


class EnumerationBoundError(SquarexError):
    """An exhaustive scan was requested over more elements than allowed."""


class InvalidCurveError(SquarexError):
    """Curve parameters violate b != 0 or a^2 - 4b != 0."""


class NotOnCurveError(SquarexError):
    """A point handed to a curve operation does not satisfy the curve equation."""


class ParseError(SquarexError):
    """Malformed textual element, point or modulus."""
