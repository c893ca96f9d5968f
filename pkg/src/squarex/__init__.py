"""Points with square x-coordinate on y^2 = x^3 + ax^2 + bx over finite fields."""

from .curve import (
    INF,
    CurveParams,
    Point,
    add_points,
    contains,
    count_points,
    enumerate_points,
    make_curve,
    negate,
    scalar_mul,
)
from .errors import (
    ContextMismatchError,
    EnumerationBoundError,
    FieldError,
    InvalidCurveError,
    NotOnCurveError,
    ParseError,
    SquarexError,
)
from .field import FieldCtx, FieldElement, enumerate_field, make_field
from .isogeny import IsogenyPair, apply_phi, codomain, fiber, image, kernel
from .theorem import Sweep, SweepSpec, VerificationReport, square_x_set, sweep, verify_curve

__version__ = "0.1.0"
