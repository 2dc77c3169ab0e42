"""Command-line front end: ``sumrank {construct,encode,mindist,bounds,selftest}``."""

from __future__ import annotations

import argparse
import json
import sys

from . import bounds, selftest
from .code import construct, dumps, encode, load, min_distance_bruteforce, DEFAULT_ENUM_CAP
from .curve import CurveModel
from .errors import (
    BoundViolation,
    EnumerationTooLarge,
    HypothesisFailed,
    LengthMismatch,
    SumRankError,
    TooFewPlaces,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INVALID = 2
EXIT_HYPOTHESIS = 3
EXIT_LENGTH = 4
EXIT_ENUM = 5


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def cmd_construct(args) -> int:
    try:
        if args.curve == "p1":
            curve = CurveModel.projective_line(args.p, args.e)
        else:
            if args.q0 is None:
                _err("--q0 is required for the Hermitian curve")
                return EXIT_INVALID
            curve = CurveModel.hermitian(args.p, args.e, args.q0)
        if args.r < 1:
            raise ValueError("--r must be >= 1")
        code = construct(curve, args.r, args.m, max_s=args.max_s)
    except (HypothesisFailed, TooFewPlaces) as exc:
        _err(str(exc))
        return EXIT_HYPOTHESIS
    except (ValueError, SumRankError) as exc:
        _err(str(exc))
        return EXIT_INVALID
    if args.out:
        _write(dumps(code), args.out)
    print(code.report.table())
    return EXIT_OK


def parse_message(text: str) -> list[int]:
    """Comma-separated symbols, each decimal or 0x-prefixed hex."""
    text = text.strip()
    if not text:
        return []
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        out.append(int(tok, 16) if tok.lower().startswith("0x") else int(tok, 10))
    return out


def cmd_encode(args) -> int:
    try:
        code = load(args.code)
        msg = parse_message(args.message)
        word = encode(code, msg)
    except LengthMismatch as exc:
        _err(str(exc))
        return EXIT_LENGTH
    except (OSError, ValueError, SumRankError) as exc:
        _err(str(exc))
        return EXIT_INVALID
    print(json.dumps({"blocks": word.tolist()}))
    return EXIT_OK


def cmd_mindist(args) -> int:
    try:
        code = load(args.code)
        d = min_distance_bruteforce(code, cap=args.cap, jobs=args.jobs)
    except EnumerationTooLarge as exc:
        _err(str(exc))
        return EXIT_ENUM
    except BoundViolation as exc:
        _err(str(exc))
        return EXIT_FAIL
    except (OSError, ValueError, SumRankError) as exc:
        _err(str(exc))
        return EXIT_INVALID
    rep = code.report
    print(f"d_exact {d}  (bracket [{rep.d_lower}, {rep.d_upper_singleton}])")
    return EXIT_OK


def cmd_bounds(args) -> int:
    r = bounds.R_INF if args.r_inf else args.r
    try:
        if args.mode == "table":
            grid = bounds.delta_grid(args.delta_step)
            _write(bounds.emit_table(args.q, r, grid), args.out)
            return EXIT_OK
        if args.delta is None:
            _err(f"--delta is required for mode {args.mode}")
            return EXIT_INVALID
        if args.mode == "compgv":
            val = bounds.compgv(args.q, r, args.delta)
        elif args.mode == "asymptotic":
            val = bounds.gv_asymptotic(args.q, r, args.delta)
        else:
            if r is bounds.R_INF or args.s is None:
                _err("finite mode needs a finite --r and --s")
                return EXIT_INVALID
            val = bounds.gv_finite(args.q, r, args.s, args.delta)
    except (ValueError, SumRankError) as exc:
        _err(str(exc))
        return EXIT_INVALID
    _write(f"{val:.6f}\n", args.out)
    return EXIT_OK


def cmd_selftest(args) -> int:
    return EXIT_OK if selftest.run(verbose=args.verbose) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sumrank", description="Linearized AG codes in the sum-rank metric.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a code and write its descriptor")
    p.add_argument("--curve", choices=["p1", "hermitian"], required=True)
    p.add_argument("--p", type=int, required=True, help="characteristic")
    p.add_argument("--e", type=int, default=1, help="k = F_{p^e}")
    p.add_argument("--q0", type=int, help="Hermitian parameter, q = q0^2")
    p.add_argument("--r", type=int, required=True, help="degree of l over k")
    p.add_argument("--m", type=int, required=True, help="E = (m/r) * q_inf")
    p.add_argument("--max-s", type=int, default=None)
    p.add_argument("--out", help="descriptor JSON path")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("encode", help="encode a message with a stored code")
    p.add_argument("--code", required=True)
    p.add_argument("--message", required=True, help="comma-separated l-elements, decimal or 0x-hex")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("mindist", help="brute-force minimum sum-rank distance")
    p.add_argument("--code", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cap", type=int, default=DEFAULT_ENUM_CAP)
    p.set_defaults(func=cmd_mindist)

    p = sub.add_parser("bounds", help="GV and AG-construction rate bounds")
    p.add_argument("--q", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--r", type=bounds.parse_r, default=1, help="extension degree, or 'inf'")
    g.add_argument("--r-inf", action="store_true", help="limit r -> infinity")
    p.add_argument("--mode", choices=["finite", "asymptotic", "compgv", "table"], default="table")
    p.add_argument("--s", type=int)
    p.add_argument("--delta", type=float)
    p.add_argument("--delta-step", type=float, default=0.01)
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("selftest", help="run the invariant suites")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
