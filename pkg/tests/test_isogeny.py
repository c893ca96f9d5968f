import pytest

from oracles import all_curves, small_fields
from squarex import (
    INF,
    NotOnCurveError,
    Point,
    apply_phi,
    codomain,
    contains,
    count_points,
    enumerate_points,
    fiber,
    image,
    kernel,
    make_curve,
    make_field,
)
from squarex.isogeny import closed_form_preimages

F5, F7 = make_field(5), make_field(7)


def pt(ctx, x, y):
    return Point(ctx(x), ctx(y))


def phi_by_hand(p, a, b, X, Y):
    """The forward map in plain modular integers."""
    r = (a * a - 4 * b) % p
    x = Y * Y * pow(4 * X * X, -1, p) % p
    y = Y * (r - X * X) * pow(8 * X * X, -1, p) % p
    return x, y


@pytest.mark.parametrize(
    "p,a,b,a_prime,b_prime",
    [
        (5, 0, 1, 0, 1),
        (5, 0, 2, 0, (0 - 8) % 5),
        (7, 1, 3, (-2) % 7, (1 - 12) % 7),
    ],
)
def test_codomain_examples(p, a, b, a_prime, b_prime):
    F = make_field(p)
    pair = codomain(make_curve(F, a, b))
    assert (pair.Eprime.a, pair.Eprime.b) == (F(a_prime), F(b_prime))
    assert pair.Eprime.ctx is pair.E.ctx


def test_codomain_parameters_valid_everywhere():
    for ctx in small_fields(31):
        for E in all_curves(ctx):
            Ep = codomain(E).Eprime
            assert Ep.r == 16 * E.b
            assert Ep.b == E.r


def test_apply_phi_examples():
    pair = codomain(make_curve(F5, 0, 1))
    assert apply_phi(pair, pt(F5, 0, 0)) == INF
    assert apply_phi(pair, INF) == INF
    assert pair.E.r != F5(2) * F5(2)
    assert apply_phi(pair, pt(F5, 2, 0)) == pt(F5, 0, 0)


def test_apply_phi_matches_hand_formula():
    for p in (7, 11, 13):
        F = make_field(p)
        for a in range(p):
            for b in range(1, p):
                if (a * a - 4 * b) % p == 0:
                    continue
                pair = codomain(make_curve(F, a, b))
                for Q in enumerate_points(pair.Eprime):
                    if Q.x is None or not Q.x:
                        continue
                    x, y = phi_by_hand(p, a, b, Q.x.v, Q.y.v)
                    assert apply_phi(pair, Q) == pt(F, x, y)


def test_apply_phi_rejects_off_curve():
    pair = codomain(make_curve(F5, 0, 1))
    with pytest.raises(NotOnCurveError):
        apply_phi(pair, pt(F5, 1, 1))


def test_kernel():
    for ctx in (F5, F7, make_field(3, 2)):
        for E in all_curves(ctx):
            pair = codomain(E)
            K = kernel(pair)
            assert K == [INF, Point(ctx.zero, ctx.zero)]
            assert len(K) == 2
            assert all(apply_phi(pair, P) == INF for P in K)
            assert [Q for Q in enumerate_points(pair.Eprime) if apply_phi(pair, Q) == INF] == K


def test_fiber_examples():
    pair = codomain(make_curve(F5, 0, 1))
    assert fiber(pair, INF) == [INF, pt(F5, 0, 0)]
    # a +- 2 sqrt(b) with sqrt(1) = +-1 gives {2, 3}
    assert sorted({(0 + 2 * s) % 5 for s in (1, 4)}) == [2, 3]
    assert fiber(pair, pt(F5, 0, 0)) == [pt(F5, 2, 0), pt(F5, 3, 0)]
    pair2 = codomain(make_curve(F5, 0, 2))
    assert not F5(2).is_square()
    assert fiber(pair2, pt(F5, 0, 0)) == []


def test_fiber_rejects_off_curve():
    pair = codomain(make_curve(F5, 0, 1))
    with pytest.raises(NotOnCurveError):
        fiber(pair, pt(F5, 1, 1))


def test_image_examples():
    pair = codomain(make_curve(F5, 0, 1))
    assert image(pair) == [INF, pt(F5, 0, 0)]
    pair2 = codomain(make_curve(F5, 0, 2))
    assert enumerate_points(pair2.Eprime) == [INF, pt(F5, 0, 0)]
    assert image(pair2) == [INF]


@pytest.mark.parametrize("ctx", small_fields(31), ids=repr)
def test_isogeny_invariants(ctx):
    for E in all_curves(ctx):
        pair = codomain(E)
        src = enumerate_points(pair.Eprime)
        img = image(pair)
        n = count_points(E)
        assert n == count_points(pair.Eprime) == len(src)
        assert 2 * len(img) == n

        fibers = {}
        for Q in src:
            P = apply_phi(pair, Q)
            assert contains(E, P)
            fibers.setdefault(P, set()).add(Q)
        covered = 0
        for P in enumerate_points(E):
            F = fiber(pair, P)
            assert len(F) in (0, 2)
            assert set(F) == fibers.get(P, set())
            assert bool(F) == (P in img)
            covered += len(F)
            if P.x is not None and P.x and P.y and P.x.is_square():
                assert (P.x * P.x + E.a * P.x + E.b).is_square()
        assert covered == len(src)
        for Q in src:
            assert Q in fiber(pair, apply_phi(pair, Q))


def test_closed_form_examples():
    E = make_curve(F7, 1, 3)
    pair = codomain(E)
    for P in enumerate_points(E):
        if P.x is not None and P.y:
            assert closed_form_preimages(pair, P) == fiber(pair, P)
    with pytest.raises(ValueError):
        closed_form_preimages(pair, INF)
