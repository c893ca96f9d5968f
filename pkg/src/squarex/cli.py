"""Command-line front end.

    squarex verify    --p 5 --a 0 --b 1 [--format text|json|csv]
    squarex sweep     --p-min 3 --p-max 31 | --p 10007 --samples 50 --seed 7
    squarex enumerate --p 5 --a 0 --b 1 [--square-x-only]
    squarex fiber     --p 5 --a 0 --b 1 --point "(0,0)"

Exit status: 0 success, 1 verification failure, 2 usage or input error.
Data goes to stdout, diagnostics (and the sweep summary) to stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys

from .curve import CurveParams, Point, enumerate_points, parse_point
from .errors import SquarexError
from .field import FieldCtx, make_field, parse_coeffs
from .isogeny import codomain, fiber
from .theorem import CSV_COLUMNS, Sweep, SweepSpec, square_x_set, verify_curve

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _field_from_args(args) -> FieldCtx:
    modulus = parse_coeffs(args.modulus) if args.modulus else None
    if args.k == 1 and modulus is not None:
        raise SquarexError("--modulus requires --k > 1")
    return make_field(args.p, args.k, modulus)


def _curve_from_args(args) -> CurveParams:
    ctx = _field_from_args(args)
    return CurveParams(ctx, ctx.parse(args.a), ctx.parse(args.b))


def _parse_ext(text: str) -> FieldCtx:
    # "p^k" or "p^k:c0,c1,...,1"
    base, _, modulus = text.partition(":")
    try:
        p, k = (int(s) for s in base.split("^"))
    except ValueError:
        raise SquarexError(f"extension field must look like 'p^k[:modulus]', got {text!r}") from None
    return make_field(p, k, parse_coeffs(modulus) if modulus else None)


def _curve_header(E: CurveParams) -> dict:
    return {"p": E.ctx.p, "k": E.ctx.k, "a": str(E.a), "b": str(E.b)}


def _write_points(points: list[Point], fmt: str, out, extra: dict, key: str = "points") -> None:
    if fmt == "json":
        out.write(json.dumps({**extra, key: [str(P) for P in points]}) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["point"])
        for P in points:
            w.writerow([str(P)])
    else:
        for P in points:
            out.write(f"{P}\n")


def cmd_verify(args, out) -> int:
    E = _curve_from_args(args)
    report = verify_curve(E, backend=args.backend, bound=args.max_enum)
    if args.format == "json":
        out.write(report.to_json() + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        w.writerow(report.csv_row())
    else:
        out.write(
            f"{E}\n"
            f"  #E(K) = {report.card_E}   #E'(K) = {report.card_Eprime}   #Im(phi) = {report.card_image}\n"
            f"  b is {'a square' if report.b_is_square else 'a non-square'}\n"
            f"  #S = {report.card_S}   predicted = {report.predicted_S}\n"
            f"  theorem {'ok' if report.theorem_ok else 'FAILED'}, "
            f"set identity {'ok' if report.set_identity_ok else 'FAILED'}, "
            f"counts {'ok' if report.counts_equal_ok else 'FAILED'}\n"
        )
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_sweep(args, out) -> int:
    if args.samples is not None and (args.p_min is not None or args.p_max is not None):
        raise SquarexError("--samples takes --p, not a --p-min/--p-max range")
    spec = SweepSpec(
        p_min=args.p_min,
        p_max=args.p_max,
        primes=tuple(args.p or ()),
        fields=tuple(_parse_ext(e) for e in args.ext or ()),
        samples=args.samples,
        seed=args.seed,
    )
    run = Sweep(spec, jobs=args.jobs, keep_going=args.keep_going, backend=args.backend, bound=args.max_enum)
    writer = csv.writer(out, lineterminator="\n")
    if args.format == "csv":
        writer.writerow(CSV_COLUMNS)
    for report in run:
        if args.format == "json":
            out.write(report.to_json() + "\n")
        elif args.format == "csv":
            writer.writerow(report.csv_row())
        else:
            mark = "ok" if report.ok else "FAIL"
            out.write(
                f"p={report.p} k={report.k} a={report.a} b={report.b} "
                f"#E={report.card_E} #S={report.card_S} predicted={report.predicted_S} {mark}\n"
            )
    out.flush()
    print(run.summary.to_json(), file=sys.stderr)
    return EXIT_OK if run.summary.failures == 0 else EXIT_FAIL


def cmd_enumerate(args, out) -> int:
    E = _curve_from_args(args)
    points = square_x_set(E, args.max_enum) if args.square_x_only else enumerate_points(E, args.max_enum)
    _write_points(points, args.format, out, _curve_header(E))
    return EXIT_OK


def cmd_fiber(args, out) -> int:
    E = _curve_from_args(args)
    P = parse_point(E.ctx, args.point)
    pair = codomain(E)
    points = fiber(pair, P)
    Ep = pair.Eprime
    if args.format == "text":
        out.write(f"E': a'={Ep.a} b'={Ep.b}\n")
    extra = {"a_prime": str(Ep.a), "b_prime": str(Ep.b), "point": str(P)}
    _write_points(points, args.format, out, extra, key="fiber")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="squarex",
        description="Count points with square x-coordinate on y^2 = x^3 + ax^2 + bx over finite fields.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--max-enum", type=int, default=None,
                        help="enumeration bound (default: $SQUAREX_MAX_ENUM or 2^24)")
    common.add_argument("--backend", choices=("auto", "points", "vector"), default="auto")

    curve = argparse.ArgumentParser(add_help=False)
    curve.add_argument("--p", type=int, required=True, help="odd prime characteristic")
    curve.add_argument("--k", type=int, default=1, help="extension degree (default 1)")
    curve.add_argument("--modulus", help="monic modulus 'c0,c1,...,1' for k > 1 (default: smallest irreducible)")
    curve.add_argument("--a", required=True)
    curve.add_argument("--b", required=True)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common, curve], help="verify the square-x count for one curve")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", parents=[common], help="verify many curves")
    p.add_argument("--p-min", type=int)
    p.add_argument("--p-max", type=int)
    p.add_argument("--p", type=int, action="append", help="prime to include (repeatable)")
    p.add_argument("--ext", action="append", help="extension field 'p^k[:modulus]' (repeatable)")
    p.add_argument("--samples", type=int, help="random valid curves per field instead of all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--keep-going", action="store_true", help="do not stop at the first failure")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("enumerate", parents=[common, curve], help="list E(K)")
    p.add_argument("--square-x-only", action="store_true", help="list only the square-x set S")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("fiber", parents=[common, curve], help="preimages of a point under phi")
    p.add_argument("--point", required=True, help="'inf' or '(x,y)'")
    p.set_defaults(func=cmd_fiber)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr, format="%(levelname)s: %(message)s")
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except SquarexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
