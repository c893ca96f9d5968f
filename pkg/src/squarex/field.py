"""Arithmetic in finite fields F_q, q = p^k with p an odd prime.

Prime-field elements are stored as residues in [0, p).  Extension-field
elements (k > 1) are coefficient tuples (c0, c1, ..., c_{k-1}) in ascending
degree, reduced modulo a monic irreducible polynomial of degree k.

Canonical order, used for enumeration, root selection and sorting, is the
residue order for k = 1 and lexicographic order on (c0, c1, ...) for k > 1.
"""

from __future__ import annotations

import functools
import itertools
import os
import random
from typing import Iterator, Sequence

from sympy import factorint
from sympy.ntheory.primetest import isprime

from .errors import (
    ContextMismatchError,
    EnumerationBoundError,
    FieldError,
    ParseError,
    SquarexError,
)

WORD_LIMIT = 1 << 62
MAX_EXTENSION_DEGREE = 4
DEFAULT_ENUM_BOUND = 1 << 24
ENUM_BOUND_ENV = "SQUAREX_MAX_ENUM"
MEMO_MAX_Q = 1024


def enumeration_bound(bound: int | None = None) -> int:
    """Return the active enumeration bound.

    An explicit ``bound`` wins, then the ``SQUAREX_MAX_ENUM`` environment
    variable, then the default of 2**24.
    """
    if bound is not None:
        return bound
    env = os.environ.get(ENUM_BOUND_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise SquarexError(f"{ENUM_BOUND_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_ENUM_BOUND


def check_enumerable(q: int, bound: int | None = None) -> None:
    limit = enumeration_bound(bound)
    if q > limit:
        raise EnumerationBoundError(f"field of size {q} exceeds enumeration bound {limit}")


# -- polynomial helpers over F_p (ascending coefficient lists) ----------------

def _trim(u: list[int]) -> list[int]:
    while u and u[-1] == 0:
        u.pop()
    return u


def _poly_mulmod(u: Sequence[int], v: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    # m monic of degree k; result has exactly k coefficients
    k = len(m) - 1
    prod = [0] * (len(u) + len(v) - 1) if u and v else []
    for i, ui in enumerate(u):
        if ui:
            for j, vj in enumerate(v):
                prod[i + j] += ui * vj
    for i in range(len(prod) - 1, k - 1, -1):
        c = prod[i] % p
        if c:
            for j in range(k):
                prod[i - k + j] -= c * m[j]
    out = [c % p for c in prod[:k]]
    return out + [0] * (k - len(out))


def _poly_powmod(u: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    k = len(m) - 1
    result = [1] + [0] * (k - 1)
    base = list(u)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, m, p)
        e >>= 1
        if e:
            base = _poly_mulmod(base, base, m, p)
    return result


def _poly_gcd(u: Sequence[int], v: Sequence[int], p: int) -> list[int]:
    u, v = _trim([c % p for c in u]), _trim([c % p for c in v])
    while v:
        inv = pow(v[-1], -1, p)
        while len(u) >= len(v):
            c = u[-1] * inv % p
            shift = len(u) - len(v)
            for j, vj in enumerate(v):
                u[shift + j] = (u[shift + j] - c * vj) % p
            _trim(u)
            if not u:
                break
        u, v = v, u
    return u


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial of degree k over F_p.

    f is irreducible iff x^(p^k) = x mod f and gcd(f, x^(p^(k/l)) - x) = 1
    for every prime l dividing k.
    """
    m = list(modulus)
    k = len(m) - 1
    if k == 1:
        return True
    x = [0, 1] + [0] * (k - 2)
    frob = [x]  # frob[j] = x^(p^j) mod f
    for _ in range(k):
        frob.append(_poly_powmod(frob[-1], p, m, p))
    if frob[k] != x:
        return False
    for ell in factorint(k):
        h = list(frob[k // ell])
        h[1] -= 1
        if len(_poly_gcd(m, h, p)) > 1:
            return False
    return True


def find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible polynomial of degree k over F_p, in canonical order."""
    if k == 1:
        return (0, 1)
    # candidates with c0 = 0 are divisible by x; skip them
    n = p ** (k - 1)
    while True:
        low, rest = [], n
        for _ in range(k):
            rest, c = divmod(rest, p)
            low.append(c)
        modulus = tuple(reversed(low)) + (1,)
        if is_irreducible(modulus, p):
            return modulus
        n += 1


def _check_size(p, k) -> None:
    if not isinstance(p, int) or p < 3 or not isprime(p):
        raise FieldError(f"p must be an odd prime, got {p}")
    if not isinstance(k, int) or k < 1:
        raise FieldError(f"extension degree must be >= 1, got {k}")
    if k > MAX_EXTENSION_DEGREE:
        raise FieldError(f"extension degree {k} > {MAX_EXTENSION_DEGREE} is not supported")
    if p**k >= WORD_LIMIT:
        raise FieldError(f"field size {p}^{k} exceeds 2^62")


class FieldCtx:
    """The finite field F_q with q = p^k.

    Use :func:`make_field` to get shared, validated instances.  Calling the
    context coerces ints, coefficient sequences and text into elements.
    """

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None):
        _check_size(p, k)
        self.p = p
        self.k = k
        self.q = p**k
        if k == 1:
            if modulus is not None:
                raise FieldError("a prime field takes no modulus")
            self.modulus = None
        else:
            if modulus is None:
                modulus = find_irreducible(p, k)
            modulus = tuple(int(c) for c in modulus)
            if len(modulus) != k + 1:
                raise FieldError(f"modulus must have {k + 1} coefficients, got {len(modulus)}")
            if any(not 0 <= c < p for c in modulus):
                raise FieldError(f"modulus coefficients must lie in [0, {p})")
            if modulus[-1] != 1:
                raise FieldError("modulus must be monic")
            if not is_irreducible(modulus, p):
                raise FieldError(f"modulus {modulus} is reducible over F_{p}")
            self.modulus = modulus
        self._nonresidue: FieldElement | None = None
        # products of small extension fields are memoized (at most q^2 entries)
        self._mul_memo: dict | None = {} if 1 < k and self.q <= MEMO_MAX_Q else None

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FieldCtx):
            return NotImplemented
        return (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k}, modulus={format_coeffs(self.modulus)})"

    def __reduce__(self):
        return (make_field, (self.p, self.k, self.modulus))

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.ctx != self:
                raise ContextMismatchError(f"{value!r} does not belong to {self!r}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        p = self.p
        if isinstance(value, int):
            if self.k == 1:
                return FieldElement(self, value % p)
            return FieldElement(self, (value % p,) + (0,) * (self.k - 1))
        coeffs = [int(c) % p for c in value]
        if len(coeffs) > self.k:
            raise FieldError(f"expected at most {self.k} coefficients, got {len(coeffs)}")
        coeffs += [0] * (self.k - len(coeffs))
        if self.k == 1:
            return FieldElement(self, coeffs[0])
        return FieldElement(self, tuple(coeffs))

    @property
    def zero(self) -> FieldElement:
        return self(0)

    @property
    def one(self) -> FieldElement:
        return self(1)

    def parse(self, text: str) -> FieldElement:
        """Parse ``"5"`` (k = 1) or ``"c0,c1,...,c(k-1)"`` (k > 1)."""
        parts = [s.strip() for s in text.strip().split(",")]
        try:
            coeffs = [int(s) for s in parts]
        except ValueError:
            raise ParseError(f"cannot parse field element {text!r}") from None
        if len(coeffs) != self.k:
            raise ParseError(f"expected {self.k} comma-separated coefficients, got {text!r}")
        return self(coeffs)

    def elements(self, bound: int | None = None) -> Iterator[FieldElement]:
        check_enumerable(self.q, bound)
        if self.k == 1:
            return (FieldElement(self, v) for v in range(self.p))
        return (FieldElement(self, c) for c in itertools.product(range(self.p), repeat=self.k))

    def index(self, u: FieldElement) -> int:
        """Position of ``u`` in canonical order; a bijection onto range(q)."""
        if self.k == 1:
            return u.v
        idx = 0
        for c in u.v:
            idx = idx * self.p + c
        return idx

    def from_index(self, idx: int) -> FieldElement:
        if self.k == 1:
            return FieldElement(self, idx)
        coeffs = []
        for _ in range(self.k):
            idx, c = divmod(idx, self.p)
            coeffs.append(c)
        return FieldElement(self, tuple(reversed(coeffs)))

    @property
    def nonresidue(self) -> FieldElement:
        """A fixed non-square, drawn from a seeded generator (half of all draws succeed)."""
        if self._nonresidue is None:
            rng = random.Random(self.q)
            while True:
                u = self.from_index(rng.randrange(1, self.q))
                if not u.is_square():
                    self._nonresidue = u
                    break
        return self._nonresidue

    # raw arithmetic on canonical representations

    def _mul(self, u, v):
        memo = self._mul_memo
        if memo is None:
            return tuple(_poly_mulmod(u, v, self.modulus, self.p))
        key = (u, v)
        w = memo.get(key)
        if w is None:
            w = memo[key] = tuple(_poly_mulmod(u, v, self.modulus, self.p))
        return w


@functools.lru_cache(maxsize=None)
def _cached_field(p: int, k: int, modulus: tuple[int, ...] | None) -> FieldCtx:
    return FieldCtx(p, k, modulus)


def make_field(p: int, k: int = 1, modulus: Sequence[int] | None = None) -> FieldCtx:
    """Validated, shared field context.  ``modulus=None`` picks the smallest irreducible."""
    _check_size(p, k)
    if k > 1 and modulus is None:
        modulus = find_irreducible(p, k)
    if modulus is not None:
        modulus = tuple(int(c) for c in modulus)
    return _cached_field(p, k, modulus)


class FieldElement:
    """An element of a :class:`FieldCtx` in canonical reduced form.

    Supports ``+ - * / **``, unary minus and comparison with other elements
    of the same field or with plain ints (coerced into the field).
    """

    __slots__ = ("ctx", "v")

    def __init__(self, ctx: FieldCtx, v):
        self.ctx = ctx
        self.v = v

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ContextMismatchError(f"operands from {self.ctx!r} and {other.ctx!r}")
            return other
        if isinstance(other, int):
            return self.ctx(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ctx = self.ctx
        if ctx.k == 1:
            return FieldElement(ctx, (self.v + other.v) % ctx.p)
        p = ctx.p
        return FieldElement(ctx, tuple((a + b) % p for a, b in zip(self.v, other.v)))

    __radd__ = __add__

    def __neg__(self):
        ctx = self.ctx
        if ctx.k == 1:
            return FieldElement(ctx, -self.v % ctx.p)
        return FieldElement(ctx, tuple(-a % ctx.p for a in self.v))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ctx = self.ctx
        if ctx.k == 1:
            return FieldElement(ctx, self.v * other.v % ctx.p)
        return FieldElement(ctx, ctx._mul(self.v, other.v))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if not self:
            raise ZeroDivisionError(f"inverse of zero in {self.ctx!r}")
        ctx = self.ctx
        if ctx.k == 1:
            return FieldElement(ctx, pow(self.v, -1, ctx.p))
        return self ** (ctx.q - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        ctx = self.ctx
        if n < 0:
            return self.inverse() ** -n
        if ctx.k == 1:
            return FieldElement(ctx, pow(self.v, n, ctx.p))
        result = ctx.one.v
        base = self.v
        while n:
            if n & 1:
                result = ctx._mul(result, base)
            n >>= 1
            if n:
                base = ctx._mul(base, base)
        return FieldElement(ctx, result)

    def __bool__(self):
        if self.ctx.k == 1:
            return self.v != 0
        return any(self.v)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.v == other.v and self.ctx == other.ctx
        if isinstance(other, int):
            return self.v == self.ctx(other).v
        return NotImplemented

    def __hash__(self):
        return hash(self.v)

    def __lt__(self, other: FieldElement):
        return self.sort_key < other.sort_key

    @property
    def sort_key(self):
        return self.v

    def is_square(self) -> bool:
        """Euler's criterion; zero counts as a square."""
        if not self:
            return True
        ctx = self.ctx
        if ctx.k == 1:
            return pow(self.v, (ctx.p - 1) // 2, ctx.p) == 1
        return self ** ((ctx.q - 1) // 2) == 1

    def sqrt(self) -> FieldElement | None:
        """Canonical square root (smaller of the two in canonical order), or None."""
        if not self:
            return self
        if not self.is_square():
            return None
        w = _tonelli_shanks(self)
        neg = -w
        return w if w.sort_key <= neg.sort_key else neg

    def __str__(self):
        if self.ctx.k == 1:
            return str(self.v)
        return format_coeffs(self.v)

    def __repr__(self):
        return f"FieldElement({self}, {self.ctx!r})"

    def __int__(self):
        if self.ctx.k != 1:
            raise TypeError("only prime-field elements convert to int")
        return self.v


def _tonelli_shanks(u: FieldElement) -> FieldElement:
    # u is a nonzero square
    ctx = u.ctx
    q = ctx.q
    if q % 4 == 3:
        return u ** ((q + 1) // 4)
    t, s = q - 1, 0
    while t % 2 == 0:
        t //= 2
        s += 1
    c = ctx.nonresidue ** t
    x = u ** ((t + 1) // 2)
    b = u**t
    m = s
    while b != 1:
        i, b2 = 1, b * b
        while b2 != 1:
            b2 = b2 * b2
            i += 1
        g = c ** (1 << (m - i - 1))
        x = x * g
        c = g * g
        b = b * c
        m = i
    return x


def format_coeffs(coeffs: Sequence[int]) -> str:
    return ",".join(str(c) for c in coeffs)


def parse_coeffs(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(s) for s in text.split(","))
    except ValueError:
        raise ParseError(f"cannot parse coefficient list {text!r}") from None


# -- operation-style API --------------------------------------------------------

_OPS = {
    "add": lambda u, v: u + v,
    "sub": lambda u, v: u - v,
    "mul": lambda u, v: u * v,
    "neg": lambda u, v: -u,
}


def arithmetic(u: FieldElement, v: FieldElement, op: str) -> FieldElement:
    """Apply ``op`` in {"add", "sub", "mul", "neg"}; ``neg`` ignores ``v`` except for its field."""
    if u.ctx != v.ctx:
        raise ContextMismatchError(f"operands from {u.ctx!r} and {v.ctx!r}")
    try:
        fn = _OPS[op]
    except KeyError:
        raise SquarexError(f"unknown operation {op!r}") from None
    return fn(u, v)


def invert(u: FieldElement) -> FieldElement:
    return u.inverse()


def power(u: FieldElement, n: int) -> FieldElement:
    if n < 0:
        raise SquarexError("exponent must be a natural number")
    return u**n


def is_square(u: FieldElement) -> bool:
    return u.is_square()


def square_root(u: FieldElement) -> FieldElement | None:
    return u.sqrt()


def enumerate_field(ctx: FieldCtx, bound: int | None = None) -> Iterator[FieldElement]:
    """All q elements in canonical order; refuses fields larger than the bound."""
    return ctx.elements(bound)
