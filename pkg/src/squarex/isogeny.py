"""The degree-2 isogeny phi: E' -> E between

    E' : Y^2 = X^3 - 2a X^2 + r X      and      E : y^2 = x^3 + a x^2 + b x,

given by (X, Y) -> (Y^2 / 4X^2, Y (r - X^2) / 8X^2), with kernel {INF, (0,0)}.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curve import INF, CurveParams, Point, _require, enumerate_points, point_key
from .field import check_enumerable


@dataclass(frozen=True)
class IsogenyPair:
    E: CurveParams
    Eprime: CurveParams


def codomain(E: CurveParams) -> IsogenyPair:
    """Pair E with its 2-isogenous partner E' (a' = -2a, b' = r).

    E' is always valid: b' = r != 0 and a'^2 - 4b' = 16b != 0.
    """
    return IsogenyPair(E, CurveParams(E.ctx, -2 * E.a, E.r))


def _phi(pair: IsogenyPair, P: Point) -> Point:
    if P.x is None or not P.x:
        # on E', X = 0 forces Y = 0: the non-trivial kernel point
        return INF
    X, Y = P
    X2 = X * X
    x = Y * Y / (4 * X2)
    y = Y * (pair.E.r - X2) / (8 * X2)
    return Point(x, y)


def apply_phi(pair: IsogenyPair, P: Point) -> Point:
    """Image of a point of E' on E."""
    _require(pair.Eprime, P)
    return _phi(pair, P)


def kernel(pair: IsogenyPair) -> list[Point]:
    zero = pair.E.ctx.zero
    return [INF, Point(zero, zero)]


def fiber(pair: IsogenyPair, P: Point) -> list[Point]:
    """All points of E'(K) mapping to P, in canonical order (0 or 2 of them).

    X solves X^2 - 2(a + 2x)X + r = 0; each rational root is lifted to E' by
    both square roots of X^3 - 2aX^2 + rX and kept only if phi maps it to P.
    """
    E, Ep = pair.E, pair.Eprime
    _require(E, P)
    if P.x is None:
        return kernel(pair)
    x = P.x
    half_linear = E.a + 2 * x
    # roots of X^2 - 2hX + r are h +- sqrt(h^2 - r)
    s = (half_linear * half_linear - E.r).sqrt()
    if s is None:
        return []
    found = set()
    for X in {half_linear + s, half_linear - s}:
        w = Ep.rhs(X).sqrt()
        if w is None:
            continue
        for Y in {w, -w}:
            Q = Point(X, Y)
            if _phi(pair, Q) == P:
                found.add(Q)
    return sorted(found, key=point_key)


def closed_form_preimages(pair: IsogenyPair, P: Point) -> list[Point]:
    """Preimages of P = (x, y), y != 0, by the explicit inversion formulas

        X = a + 2x +- 2 sqrt(x^2 + a x + b),    Y = 8 y X^2 / (r - X^2).

    Returns [] when x^2 + a x + b is a non-square.
    """
    E = pair.E
    _require(E, P)
    x, y = P
    if x is None or not y:
        raise ValueError("closed-form inversion needs an affine point with y != 0")
    s = (x * x + E.a * x + E.b).sqrt()
    if s is None:
        return []
    out = set()
    for X in (E.a + 2 * x + 2 * s, E.a + 2 * x - 2 * s):
        X2 = X * X
        out.add(Point(X, 8 * y * X2 / (E.r - X2)))
    return sorted(out, key=point_key)


def image(pair: IsogenyPair, bound: int | None = None) -> list[Point]:
    """phi(E'(K)) by forward-mapping every point of E'(K), deduplicated and sorted."""
    check_enumerable(pair.E.ctx.q, bound)
    seen = {_phi(pair, Q) for Q in enumerate_points(pair.Eprime, bound)}
    return sorted(seen, key=point_key)
