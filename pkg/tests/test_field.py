import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sympy import nextprime

from oracles import ext_squares, irreducible_by_trial, poly_mul_mod, prime_squares, small_fields
from squarex import ContextMismatchError, EnumerationBoundError, FieldError, ParseError
from squarex.field import (
    arithmetic,
    enumerate_field,
    find_irreducible,
    invert,
    is_irreducible,
    is_square,
    make_field,
    power,
    square_root,
)

F5, F7 = make_field(5), make_field(7)
F9 = make_field(3, 2, (1, 0, 1))  # F_3[t]/(t^2 + 1)
T = F9((0, 1))


# -- arithmetic ---------------------------------------------------------------

def test_mul_mod_7():
    assert arithmetic(F7(3), F7(5), "mul") == F7(1)


def test_additive_identity():
    for u in enumerate_field(F7):
        assert arithmetic(F7(0), u, "add") == u


def test_f9_t_squared():
    expected = poly_mul_mod((0, 1), (0, 1), (1, 0, 1), 3)
    assert expected == (2, 0)
    assert (T * T).v == expected
    assert arithmetic(T, T, "mul") == F9(2)


def test_sub_and_neg():
    assert arithmetic(F7(2), F7(5), "sub") == F7(4)
    assert arithmetic(F7(2), F7(0), "neg") == F7(5)
    assert -T == F9((0, 2))


def test_context_mismatch():
    with pytest.raises(ContextMismatchError):
        arithmetic(F5(1), F7(1), "add")
    with pytest.raises(ContextMismatchError):
        F5(1) * F7(2)


def test_ext_mul_matches_oracle_exhaustively():
    F27 = make_field(3, 3)
    for u in enumerate_field(F27):
        for v in enumerate_field(F27):
            assert (u * v).v == poly_mul_mod(u.v, v.v, F27.modulus, 3)


# -- invert / power -------------------------------------------------------------

def test_invert_examples():
    oracle = [w for w in range(7) if 3 * w % 7 == 1]
    assert oracle == [5]
    assert invert(F7(3)) == F7(5)
    assert invert(F5(1)) == F5(1)


def test_invert_f9():
    oracle = [w for w in F9.elements() if poly_mul_mod(T.v, w.v, (1, 0, 1), 3) == (1, 0)]
    assert [w.v for w in oracle] == [(0, 2)]
    assert invert(T) == F9((0, 2))


def test_invert_zero():
    with pytest.raises(ZeroDivisionError):
        invert(F7(0))
    with pytest.raises(ZeroDivisionError):
        invert(F9(0))


def test_power_examples():
    assert power(F7(3), 6) == 1
    assert power(F7(4), 1) == F7(4)
    assert power(F5(2), 3) == F5(8 % 5) == F5(3)
    assert power(F5(0), 0) == 1
    assert power(F9(0), 0) == 1


# -- squares ----------------------------------------------------------------------

def test_is_square_examples():
    assert is_square(F7(0))
    assert sorted(prime_squares(7)) == [0, 1, 2, 4]
    assert is_square(F7(2))
    assert not is_square(F7(3))


def test_is_square_f9():
    assert T**4 == 1
    assert F9((1, 2)) ** 2 == T
    assert is_square(T)


def test_square_root_examples():
    assert prime_squares(7)[2] == {3, 4}
    assert square_root(F7(2)) == F7(3)
    assert square_root(F7(0)) == F7(0)
    assert square_root(F7(3)) is None


def test_square_root_f9():
    roots = ext_squares(3, (1, 0, 1))[(0, 1)]
    assert roots == {(1, 2), (2, 1)}
    assert square_root(T).v == min(roots) == (1, 2)


@pytest.mark.parametrize("ctx", small_fields(121), ids=repr)
def test_squareness_exhaustive(ctx):
    """Euler's criterion, existence of a root and the canonical root agree everywhere."""
    if ctx.k == 1:
        roots = {(u,): {(w,) for w in ws} for u, ws in prime_squares(ctx.p).items()}
    else:
        roots = ext_squares(ctx.p, ctx.modulus)
    half = (ctx.q - 1) // 2
    nonzero_squares = 0
    for u in enumerate_field(ctx):
        key = (u.v,) if ctx.k == 1 else u.v
        brute = key in roots
        assert is_square(u) == brute
        if u:
            assert (u**half == 1) == brute
            nonzero_squares += brute
        w = square_root(u)
        if brute:
            assert w * w == u
            key_w = (w.v,) if ctx.k == 1 else w.v
            assert key_w == min(roots[key])
        else:
            assert w is None
    assert nonzero_squares == half


# -- enumeration --------------------------------------------------------------------

def test_enumerate_examples():
    assert [u.v for u in enumerate_field(F5)] == [0, 1, 2, 3, 4]
    elems = list(enumerate_field(F9))
    assert len(elems) == 9
    assert elems[0] == F9(0)
    assert elems[-1] == F9((2, 2))
    assert len(list(enumerate_field(make_field(7, 2)))) == 49


def test_enumeration_order_matches_index():
    F27 = make_field(3, 3)
    elems = list(enumerate_field(F27))
    assert [F27.index(u) for u in elems] == list(range(27))
    assert [F27.from_index(i) for i in range(27)] == elems
    assert elems == sorted(elems)


def test_enumeration_bound(monkeypatch):
    with pytest.raises(EnumerationBoundError):
        enumerate_field(F7, bound=6)
    monkeypatch.setenv("SQUAREX_MAX_ENUM", "8")
    enumerate_field(F7)
    with pytest.raises(EnumerationBoundError):
        enumerate_field(F9)


# -- construction and parsing ------------------------------------------------------------

@pytest.mark.parametrize("p", [2, 4, 9, 1, -3])
def test_rejects_bad_characteristic(p):
    with pytest.raises(FieldError):
        make_field(p)


def test_rejects_bad_modulus():
    with pytest.raises(FieldError):
        make_field(3, 2, (2, 0, 1))  # t^2 - 1 = (t - 1)(t + 1)
    with pytest.raises(FieldError):
        make_field(3, 2, (1, 0, 2))  # not monic
    with pytest.raises(FieldError):
        make_field(3, 2, (1, 1))
    with pytest.raises(FieldError):
        make_field(3, 5)
    with pytest.raises(FieldError):
        make_field(nextprime(2**31), 2)  # exceeds 2^62


@pytest.mark.parametrize("p,k", [(3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2), (5, 4)])
def test_irreducibility_matches_trial_division(p, k):
    for low in itertools.product(range(p), repeat=k):
        m = low + (1,)
        assert is_irreducible(m, p) == irreducible_by_trial(m, p), m


def test_irreducibility_matches_root_test_for_small_degree():
    p = 5
    for k in (2, 3):
        for low in itertools.product(range(p), repeat=k):
            m = low + (1,)
            has_root = any(sum(c * x**i for i, c in enumerate(m)) % p == 0 for x in range(p))
            assert is_irreducible(m, p) == (not has_root)


def test_degree_four_irreducibility():
    # (t^2 + 1)^2 over F_3 has no roots but is reducible
    assert not is_irreducible((1, 0, 2, 0, 1), 3)
    m = find_irreducible(3, 4)
    assert irreducible_by_trial(m, 3)
    assert len(list(make_field(3, 4).elements())) == 81


def test_find_irreducible_is_smallest():
    for p, k in [(3, 2), (5, 2), (3, 3), (3, 4)]:
        first = next(
            low + (1,) for low in itertools.product(range(p), repeat=k) if irreducible_by_trial(low + (1,), p)
        )
        assert find_irreducible(p, k) == first


def test_large_characteristic_extension():
    F = make_field(1000003, 2)
    u = F((12345, 678))
    assert u * u.inverse() == 1
    assert (u * u).sqrt() in (u, -u)


def test_parse_and_format():
    assert F7.parse("12") == F7(5)
    assert str(F9.parse("1,2")) == "1,2"
    with pytest.raises(ParseError):
        F9.parse("1")
    with pytest.raises(ParseError):
        F7.parse("x")


def test_make_field_is_shared():
    assert make_field(3, 2) is make_field(3, 2)
    assert make_field(3, 2) == make_field(3, 2, (1, 0, 1))


# -- field axioms on random triples -----------------------------------------------------

AXIOM_FIELDS = [make_field(10007), make_field(3, 2), make_field(5, 3), make_field(3, 4), make_field(1000003)]


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(AXIOM_FIELDS), st.integers(0, 2**40), st.integers(0, 2**40), st.integers(0, 2**40))
def test_field_axioms(ctx, i, j, k):
    u, v, w = (ctx.from_index(n % ctx.q) for n in (i, j, k))
    assert (u + v) + w == u + (v + w)
    assert (u * v) * w == u * (v * w)
    assert u * (v + w) == u * v + u * w
    assert u + v == v + u and u * v == v * u
    assert u - u == 0
    if u:
        assert u * invert(u) == 1
    r = square_root(u * u)
    assert r is not None and r * r == u * u
