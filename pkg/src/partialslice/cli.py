"""Command-line entry point.

    partialslice ck --p 0 --q 3 --f0 "x0^2"
    partialslice tau --q 3 --pair pair.json
    partialslice verify-suite --trials 25 --seed 42 --report report.json

Exit codes: 0 success, 1 an identity or check failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Optional, Sequence

from .algebra import AlgebraContext
from .errors import PartialSliceError
from .extensions import ck, gck
from .parsing import format_polynomial, parse_expression
from .poly import CliffordPolynomial, VarKind
from .radon import dual_radon
from .serialize import slice_pair_from_json, slice_pair_to_json
from .slices import (SlicePair, cr_residual, dirac_full, require_valid, tau_q, to_full,
                     vekua_residual)
from .verify import DEFAULT_GRID, parse_grid, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _emit(obj, out: Optional[str]):
    text = json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_pair(path: str) -> SlicePair:
    try:
        if path == "-":
            obj = json.load(sys.stdin)
        else:
            with open(path, encoding="utf-8") as fh:
                obj = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    F = slice_pair_from_json(obj)
    require_valid(F)
    return F


def _base_input(args) -> CliffordPolynomial:
    ctx = AlgebraContext(args.p, args.q)
    f0 = parse_expression(args.f0, ctx)
    if f0.kind is not VarKind.BASE:
        raise InputError("f0 may only use the variables x0..x%d" % ctx.p)
    return f0


def cmd_ck(args) -> int:
    _emit(slice_pair_to_json(ck(_base_input(args))), args.out)
    return EXIT_OK


def cmd_gck(args) -> int:
    _emit(slice_pair_to_json(gck(_base_input(args))), args.out)
    return EXIT_OK


def cmd_tau(args) -> int:
    if args.q % 2 == 0:
        raise InputError(f"q must be odd (got q={args.q})")
    F = _load_pair(args.pair)
    if F.ctx.q != args.q:
        raise InputError(f"--q {args.q} does not match the pair's q={F.ctx.q}")
    _emit(slice_pair_to_json(tau_q(F)), args.out)
    return EXIT_OK


def cmd_dual_radon(args) -> int:
    _emit(slice_pair_to_json(dual_radon(_load_pair(args.pair))), args.out)
    return EXIT_OK


_CHECKS = {
    "cr": lambda F: list(cr_residual(F)),
    "vekua": lambda F: list(vekua_residual(F)),
    "monogenic": lambda F: [dirac_full(to_full(F))],
}


def cmd_check(args) -> int:
    F = _load_pair(args.pair)
    residuals = _CHECKS[args.what](F)
    ok = all(r.is_zero() for r in residuals)
    _emit({"check": args.what, "p": F.ctx.p, "q": F.ctx.q,
           "residuals": [format_polynomial(r) for r in residuals],
           "status": "pass" if ok else "fail"}, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify_suite(args) -> int:
    try:
        grid = parse_grid(args.grid)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    for p, q in grid:
        AlgebraContext(p, q)
    if args.trials < 1 or args.degree < 0:
        raise InputError("--trials must be positive and --degree nonnegative")
    progress = None if args.quiet else (lambda s: print(s, file=sys.stderr))
    report = run_suite(grid, trials=args.trials, degree=args.degree, seed=args.seed,
                       fd_points=args.fd_points, progress=progress)
    if args.report:
        _emit(report.as_dict(), args.report)
    if not args.quiet:
        for ident, counts in report.summary().items():
            mark = "ok  " if not counts["fail"] else "FAIL"
            print(f"{mark} {ident}: {counts['pass']} passed, {counts['fail']} failed")
        print("all identities hold" if report.passed
              else f"{len(report.failures)} failing records")
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="partialslice",
        description="Exact slice-function calculus over Clifford algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=fn)
        return sp

    for name, fn, what in (("ck", cmd_ck, "slice CK-extension of f0"),
                           ("gck", cmd_gck, "generalized (monogenic) CK-extension of f0")):
        sp = add(name, fn, what)
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--q", type=int, required=True)
        sp.add_argument("--f0", required=True, help='polynomial in x0..xp, e.g. "x0^2"')
        sp.add_argument("--out")

    sp = add("tau", cmd_tau, "Fueter-Sce map of a slice pair (odd q)")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--pair", required=True, help="slice pair JSON file, - for stdin")
    sp.add_argument("--out")

    sp = add("dual-radon", cmd_dual_radon, "dual Radon transform of a slice pair")
    sp.add_argument("--pair", required=True)
    sp.add_argument("--out")

    sp = add("check", cmd_check, "residuals of a slice pair")
    sp.add_argument("--pair", required=True)
    sp.add_argument("--what", choices=sorted(_CHECKS), required=True)
    sp.add_argument("--out")

    sp = add("verify-suite", cmd_verify_suite, "randomised identity suite")
    sp.add_argument("--grid", default=";".join(f"({p},{q})" for p, q in DEFAULT_GRID))
    sp.add_argument("--degree", type=int, default=6)
    sp.add_argument("--trials", type=int, default=25)
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--fd-points", type=int, default=3,
                    help="finite-difference points per trial (0 disables)")
    sp.add_argument("--report")
    sp.add_argument("--quiet", action="store_true")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, PartialSliceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
