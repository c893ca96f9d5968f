"""The curve family E: y^2 = x^3 + a x^2 + b x over F_q.

Points are :class:`Point` tuples; the point at infinity is ``INF`` (both
coordinates ``None``).  Group law uses affine chord-tangent formulas.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import InvalidCurveError, NotOnCurveError, ParseError
from .field import FieldCtx, FieldElement, check_enumerable


class Point(NamedTuple):
    x: FieldElement | None = None
    y: FieldElement | None = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self):
        if self.x is None:
            return "inf"
        return f"({self.x},{self.y})"


INF = Point()


def point_key(P: Point):
    """Sort key: infinity first, then ascending x, then ascending y."""
    if P.x is None:
        return (0,)
    return (1, P.x.sort_key, P.y.sort_key)


def parse_point(ctx: FieldCtx, text: str) -> Point:
    """Parse ``"inf"`` or ``"(x,y)"``; for k > 1 the parentheses hold 2k coefficients."""
    s = text.strip()
    if s.lower() in ("inf", "infinity", "o"):
        return INF
    if not (s.startswith("(") and s.endswith(")")):
        raise ParseError(f"point must be 'inf' or '(x,y)', got {text!r}")
    parts = [t.strip() for t in s[1:-1].split(",")]
    if len(parts) != 2 * ctx.k:
        raise ParseError(f"expected {2 * ctx.k} coordinates in {text!r}")
    try:
        coords = [int(t) for t in parts]
    except ValueError:
        raise ParseError(f"cannot parse point {text!r}") from None
    return Point(ctx(coords[: ctx.k]), ctx(coords[ctx.k :]))


@dataclass(frozen=True)
class CurveParams:
    """E: y^2 = x^3 + a x^2 + b x with the derived quantity r = a^2 - 4b.

    Construction rejects b = 0 and r = 0.
    """

    ctx: FieldCtx
    a: FieldElement
    b: FieldElement
    r: FieldElement = field(init=False)

    def __post_init__(self):
        if not self.b:
            raise InvalidCurveError(f"b must be nonzero ({self})")
        r = self.a * self.a - 4 * self.b
        if not r:
            raise InvalidCurveError(f"r = a^2 - 4b vanishes for a={self.a}, b={self.b}; curve is singular")
        object.__setattr__(self, "r", r)

    def rhs(self, x: FieldElement) -> FieldElement:
        return x * (x * (x + self.a) + self.b)

    def __str__(self):
        return f"y^2 = x^3 + ({self.a})x^2 + ({self.b})x over {self.ctx!r}"


def make_curve(ctx: FieldCtx, a, b) -> CurveParams:
    """Validated curve from field-coercible ``a`` and ``b`` (ints, coefficient lists or text)."""
    return CurveParams(ctx, ctx(a), ctx(b))


def contains(E: CurveParams, P: Point) -> bool:
    if P.x is None:
        return True
    return P.y * P.y == E.rhs(P.x)


def _require(E: CurveParams, *points: Point) -> None:
    for P in points:
        if not contains(E, P):
            raise NotOnCurveError(f"{P} is not on {E}")


def negate(E: CurveParams, P: Point) -> Point:
    _require(E, P)
    if P.x is None:
        return P
    return Point(P.x, -P.y)


def _add(E: CurveParams, P: Point, Q: Point) -> Point:
    if P.x is None:
        return Q
    if Q.x is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if y1 != y2 or not y1:
            return INF
        lam = (3 * x1 * x1 + 2 * E.a * x1 + E.b) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - E.a - x1 - x2
    return Point(x3, lam * (x1 - x3) - y1)


def add_points(E: CurveParams, P: Point, Q: Point) -> Point:
    _require(E, P, Q)
    return _add(E, P, Q)


def scalar_mul(E: CurveParams, n: int, P: Point) -> Point:
    """n * P by double-and-add; negative n multiplies -P."""
    _require(E, P)
    if n < 0:
        n, P = -n, negate(E, P)
    result = INF
    while n:
        if n & 1:
            result = _add(E, result, P)
        n >>= 1
        if n:
            P = _add(E, P, P)
    return result


def enumerate_points(E: CurveParams, bound: int | None = None) -> list[Point]:
    """E(K) in canonical order: INF, then by x, smaller root y first."""
    check_enumerable(E.ctx.q, bound)
    points = [INF]
    for x in E.ctx.elements(bound=E.ctx.q):
        w = E.rhs(x).sqrt()
        if w is None:
            continue
        points.append(Point(x, w))
        if w:
            points.append(Point(x, -w))
    return points


def count_points(E: CurveParams, bound: int | None = None) -> int:
    """#E(K) = q + 1 + sum_x chi(f(x)), chi the quadratic character with chi(0) = 0."""
    check_enumerable(E.ctx.q, bound)
    total = E.ctx.q + 1
    for x in E.ctx.elements(bound=E.ctx.q):
        f = E.rhs(x)
        if f:
            total += 1 if f.is_square() else -1
    return total
