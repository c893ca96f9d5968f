"""The square-x set S and exhaustive verification of its size.

For E: y^2 = x^3 + a x^2 + b x over F_q, let S be the points whose
x-coordinate is a square (0 included) together with INF.  Then

    #S = #E(K)/2        if b is a square,
    #S = #E(K)/2 + 1    otherwise,

and more precisely S = phi(E'(K)), plus (0,0) when b is a non-square.
:func:`verify_curve` checks both statements by full enumeration.
"""

from __future__ import annotations

import dataclasses
import json
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator

from sympy import primerange

from . import vectorized
from .curve import CurveParams, Point, count_points, enumerate_points
from .errors import SquarexError
from .field import WORD_LIMIT, FieldCtx, check_enumerable, make_field
from .isogeny import codomain, image

log = logging.getLogger(__name__)

CSV_COLUMNS = (
    "p", "k", "a", "b", "card_E", "card_E_prime", "card_S", "card_image",
    "b_is_square", "predicted_S", "theorem_ok", "set_identity_ok", "counts_equal_ok",
)


class SweepError(SquarexError):
    """Empty or out-of-range sweep specification."""


@dataclass(frozen=True)
class VerificationReport:
    p: int
    k: int
    a: str
    b: str
    card_E: int
    card_Eprime: int
    card_S: int
    card_image: int
    b_is_square: bool
    predicted_S: int
    theorem_ok: bool
    set_identity_ok: bool
    counts_equal_ok: bool

    @property
    def ok(self) -> bool:
        """All checks, including #Im(phi) = #E(K)/2."""
        return (
            self.theorem_ok
            and self.set_identity_ok
            and self.counts_equal_ok
            and 2 * self.card_image == self.card_E
        )

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> VerificationReport:
        return cls(**{f.name: d[f.name] for f in dataclasses.fields(cls)})

    def csv_row(self) -> list[str]:
        d = self.to_dict()
        d["card_E_prime"] = d.pop("card_Eprime")
        return [_csv_value(d[c]) for c in CSV_COLUMNS]


def _csv_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def square_x_set(E: CurveParams, bound: int | None = None) -> list[Point]:
    """INF plus every affine point whose x is a square (x = 0 counts)."""
    return [P for P in enumerate_points(E, bound) if P.x is None or P.x.is_square()]


def _build_report(E: CurveParams, card_E, card_Eprime, card_S, card_image, b_is_square, set_identity_ok):
    predicted = card_E // 2 + (0 if b_is_square else 1)
    return VerificationReport(
        p=E.ctx.p,
        k=E.ctx.k,
        a=str(E.a),
        b=str(E.b),
        card_E=card_E,
        card_Eprime=card_Eprime,
        card_S=card_S,
        card_image=card_image,
        b_is_square=b_is_square,
        predicted_S=predicted,
        theorem_ok=card_S == predicted,
        set_identity_ok=set_identity_ok,
        counts_equal_ok=card_E == card_Eprime,
    )


def verify_curve(E: CurveParams, backend: str = "auto", bound: int | None = None) -> VerificationReport:
    """Enumerate E, E', S and phi(E'(K)) and compare them with the predicted sizes.

    ``backend`` is ``"points"`` (point objects, the reference), ``"vector"``
    (numpy index arrays) or ``"auto"`` (vector when the field allows it).
    """
    check_enumerable(E.ctx.q, bound)
    if backend == "auto":
        backend = "vector" if vectorized.supports(E.ctx) else "points"
    if backend == "vector":
        return _build_report(E, **vectorized.verify_counts(E))
    if backend != "points":
        raise SquarexError(f"unknown backend {backend!r}")

    S = set(square_x_set(E))
    pair = codomain(E)
    img = set(image(pair))
    b_is_square = E.b.is_square()
    zero = Point(E.ctx.zero, E.ctx.zero)
    if b_is_square:
        set_ok = S == img
    else:
        set_ok = zero not in img and S == img | {zero}
    return _build_report(
        E,
        card_E=count_points(E),
        card_Eprime=count_points(pair.Eprime),
        card_S=len(S),
        card_image=len(img),
        b_is_square=b_is_square,
        set_identity_ok=set_ok,
    )


# -- sweeps ---------------------------------------------------------------------

@dataclass(frozen=True)
class SweepSpec:
    """Which curves to verify.

    The swept fields are the odd primes in [p_min, p_max], the listed
    ``primes`` and any extra ``fields`` (e.g. extension fields).  With
    ``samples=None`` every valid (a, b) is checked; otherwise ``samples``
    distinct valid pairs per field are drawn from ``random.Random(seed)``.
    """

    p_min: int | None = None
    p_max: int | None = None
    primes: tuple[int, ...] = ()
    fields: tuple[FieldCtx, ...] = ()
    samples: int | None = None
    seed: int = 0

    def field_list(self) -> list[FieldCtx]:
        if (self.p_min is None) != (self.p_max is None):
            raise SweepError("p_min and p_max must be given together")
        ctxs = set(self.fields)
        if self.p_min is not None:
            if self.p_max >= WORD_LIMIT:
                raise SweepError(f"p_max {self.p_max} exceeds 2^62")
            if self.p_min > self.p_max:
                raise SweepError(f"empty prime range [{self.p_min}, {self.p_max}]")
            ctxs.update(make_field(p) for p in primerange(max(3, self.p_min), self.p_max + 1))
        for p in self.primes:
            if p >= WORD_LIMIT:
                raise SweepError(f"prime {p} exceeds 2^62")
            ctxs.add(make_field(p))
        if not ctxs:
            raise SweepError("sweep covers no fields")
        if self.samples is not None:
            if self.samples < 1:
                raise SweepError("sample count must be positive")
            for ctx in ctxs:
                if self.samples > (ctx.q - 1) ** 2:
                    raise SweepError(
                        f"{self.samples} samples requested but {ctx!r} has only {(ctx.q - 1) ** 2} valid curves"
                    )
        return sorted(ctxs, key=lambda c: (c.p, c.k, c.modulus or ()))


@dataclass(frozen=True)
class SweepSummary:
    curves: int
    failures: int
    elapsed_ms: int

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self))


def _valid(ctx: FieldCtx, ai: int, bi: int) -> bool:
    if bi == 0:
        return False
    a, b = ctx.from_index(ai), ctx.from_index(bi)
    return a * a != 4 * b


def _items(spec: SweepSpec) -> Iterator[tuple]:
    fields = spec.field_list()
    rng = random.Random(spec.seed)
    for ctx in fields:
        q = ctx.q
        key = (ctx.p, ctx.k, ctx.modulus)
        if spec.samples is None:
            pairs: Iterable = ((ai, bi) for ai in range(q) for bi in range(1, q) if _valid(ctx, ai, bi))
        else:
            chosen: set[tuple[int, int]] = set()
            # rejects b = 0 and a^2 = 4b (probability about 2/q) and repeats
            while len(chosen) < spec.samples:
                ai, bi = rng.randrange(q), rng.randrange(q)
                if _valid(ctx, ai, bi):
                    chosen.add((ai, bi))
            pairs = sorted(chosen)
        for ai, bi in pairs:
            yield key, ai, bi


def _verify_item(item, backend="auto", bound=None) -> VerificationReport:
    (p, k, modulus), ai, bi = item
    ctx = make_field(p, k, modulus)
    E = CurveParams(ctx, ctx.from_index(ai), ctx.from_index(bi))
    return verify_curve(E, backend=backend, bound=bound)


def _verify_chunk(items, backend, bound):
    return [_verify_item(it, backend, bound) for it in items]


def _chunks(items: Iterator, size: int) -> Iterator[list]:
    chunk = []
    for it in items:
        chunk.append(it)
        if len(chunk) == size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


class Sweep:
    """Iterate verification reports for a :class:`SweepSpec` in (p, k, a, b) order.

    After iteration finishes (or stops early), :attr:`summary` holds the
    totals.  Unless ``keep_going`` is set, the sweep stops at the first
    failing curve after logging a diagnostic dump of it.
    """

    def __init__(self, spec: SweepSpec, *, jobs: int = 1, keep_going: bool = False,
                 backend: str = "auto", bound: int | None = None):
        spec.field_list()  # validate eagerly
        self.spec = spec
        self.jobs = max(1, jobs)
        self.keep_going = keep_going
        self.backend = backend
        self.bound = bound
        self.summary: SweepSummary | None = None

    def _reports(self) -> Iterator[VerificationReport]:
        items = _items(self.spec)
        if self.jobs == 1:
            for it in items:
                yield _verify_item(it, self.backend, self.bound)
            return
        pool = ProcessPoolExecutor(max_workers=self.jobs)
        try:
            # bounded look-ahead keeps memory flat on long sweeps
            pending = []
            for chunk in _chunks(items, 64):
                pending.append(pool.submit(_verify_chunk, chunk, self.backend, self.bound))
                if len(pending) >= 4 * self.jobs:
                    yield from pending.pop(0).result()
            for fut in pending:
                yield from fut.result()
        finally:
            pool.shutdown(wait=True, cancel_futures=True)

    def __iter__(self) -> Iterator[VerificationReport]:
        start = time.perf_counter()
        curves = failures = 0
        try:
            for report in self._reports():
                curves += 1
                if not report.ok:
                    failures += 1
                    log.error("verification failed: %s", report.to_json())
                    yield report
                    if not self.keep_going:
                        log.error("halting sweep (use keep_going to continue)")
                        return
                    continue
                yield report
        finally:
            elapsed = round((time.perf_counter() - start) * 1000)
            self.summary = SweepSummary(curves, failures, elapsed)


def sweep(spec: SweepSpec, **kwargs) -> tuple[list[VerificationReport], SweepSummary]:
    """Run a sweep to completion; keyword arguments as for :class:`Sweep`."""
    run = Sweep(spec, **kwargs)
    reports = list(run)
    return reports, run.summary


def parse_curve(ctx: FieldCtx, a: str, b: str) -> CurveParams:
    """Curve from textual coefficients; b = 0 or r = 0 raise InvalidCurveError."""
    return CurveParams(ctx, ctx.parse(a), ctx.parse(b))

