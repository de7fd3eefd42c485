"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 precondition violation,
3 precision exhaustion, 4 internal certificate failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .classify import classify_pair, classify_single, classify_symmetric, verify_certificate
from .decompose import additive_decompose, multiplicative_decompose
from .errors import (
    CertificateError,
    DegenerateParameters,
    PrecisionExhausted,
    TrivialDependence,
    UnreachableCardinality,
)
from .geometry import scatter_probe
from .harness import DEFAULT_WIDTH, FAMILY_ALIASES, run_series, witness_family
from .parser import ParseError, parse_bipoly

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_PRECISION, EXIT_INTERNAL = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _width(text: str) -> Fraction:
    m = re.fullmatch(r"\s*2\^(-?\d+)\s*", text)
    try:
        w = Fraction(2) ** int(m.group(1)) if m else Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad width {text!r}; use e.g. 2^-30, 1e-9 or 1/1000")
    if w <= 0:
        raise argparse.ArgumentTypeError("width must be positive")
    return w


def _grid(text: str) -> list[int]:
    m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    if not m or int(m.group(1)) > int(m.group(2)):
        raise argparse.ArgumentTypeError(f"bad grid {text!r}; use a..b with a <= b")
    return list(range(int(m.group(1)), int(m.group(2)) + 1))


def _n_grid(text: str) -> list[int]:
    m = re.fullmatch(r"\s*2\^(\d+)\s*\.\.\s*2\^(\d+)\s*", text)
    if m:
        a, b = int(m.group(1)), int(m.group(2))
        return [1 << i for i in range(a, b + 1)]
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad n grid {text!r}; use 2^a..2^b or a comma list")


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p = _Parser(add_help=False)
    p.add_argument("--seed", type=int, default=d(0), help="seed for the random set family")
    p.add_argument("--precision", type=_width, default=d(DEFAULT_WIDTH),
                   help="interval width for certified deduplication (default 2^-30)")
    p.add_argument("--format", choices=("text", "tree"), default=d("text"),
                   help="plain text or a JSON tree")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(suppress=True)
    parser = _Parser(prog="polyexpand", parents=[_global_flags(suppress=False)],
                     description="Structure of bivariate polynomial pairs over the rationals.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("decompose", parents=[common], help="additive and multiplicative canonical forms")
    p.add_argument("P")

    p = sub.add_parser("classify", parents=[common], help="trichotomy verdict with certificate")
    p.add_argument("polys", nargs="+", metavar="P")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--symmetric", action="store_true", help="require v == u in the certificate")
    mode.add_argument("--single", action="store_true", help="classify one polynomial against itself")

    p = sub.add_parser("scatter", parents=[common], help="curve-family overlap counts on a grid")
    p.add_argument("P")
    p.add_argument("Q")
    p.add_argument("--grid", type=_grid, required=True, help="integer range a..b")
    p.add_argument("--threshold", type=int, default=None)

    p = sub.add_parser("expand", parents=[common], help="image-size series and growth exponent")
    p.add_argument("P")
    p.add_argument("Q")
    p.add_argument("--family", choices=("witness", "ap", "gp", "random"), required=True)
    p.add_argument("--n", type=_n_grid, required=True, dest="n_grid", help="2^a..2^b or a comma list")
    p.add_argument("--out", default=None, help="CSV path (stdout when omitted)")
    return parser


def _poly(text: str):
    return parse_bipoly(text)


def _emit(args, tree: dict, text: str) -> None:
    if args.format == "tree":
        sys.stdout.write(json.dumps(tree, indent=2) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _form_tree(form) -> Optional[dict]:
    if form is None:
        return None
    return {"f": form.f.to_str("z"), "u": form.u.to_str("x"), "v": form.v.to_str("y")}


def _form_text(name: str, form) -> str:
    if form is None:
        return f"{name}: none"
    t = _form_tree(form)
    return f"{name}: f={t['f']}, u={t['u']}, v={t['v']}"


def cmd_decompose(args) -> int:
    P = _poly(args.P)
    add, mul = additive_decompose(P), multiplicative_decompose(P)
    tree = {"input": str(P), "additive": _form_tree(add), "multiplicative": _form_tree(mul)}
    _emit(args, tree, _form_text("additive", add) + "\n" + _form_text("multiplicative", mul))
    return EXIT_OK


def cmd_classify(args) -> int:
    want = 1 if args.single else 2
    if len(args.polys) != want:
        raise UsageError(f"classify expects {want} polynomial{'s' if want > 1 else ''}, got {len(args.polys)}")
    polys = [_poly(t) for t in args.polys]
    if args.single:
        P = Q = polys[0]
        result = classify_single(P)
    elif args.symmetric:
        P, Q = polys
        result = classify_symmetric(P, Q)
    else:
        P, Q = polys
        result = classify_pair(P, Q)
    cert = result.certificate
    if cert is not None and not verify_certificate(cert, P, Q):
        raise CertificateError("certificate failed independent verification")
    tree = result.to_tree()
    lines = [f"verdict: {result.verdict.value}"]
    if cert is not None:
        lines += [f"{k}: {v}" for k, v in tree["certificate"].items()]
        lines.append("certificate: verified")
    _emit(args, tree, "\n".join(lines))
    return EXIT_OK


def cmd_scatter(args) -> int:
    report = scatter_probe(_poly(args.P), _poly(args.Q), args.grid, threshold=args.threshold)
    _emit(args, report.to_tree(), report.to_table())
    return EXIT_OK


def cmd_expand(args) -> int:
    P, Q = _poly(args.P), _poly(args.Q)
    cls = None
    if args.family == "witness":
        cls = classify_pair(P, Q)
        family = witness_family(cls)
    else:
        family = FAMILY_ALIASES[args.family]
    series = run_series(P, Q, family, args.n_grid, classification=cls, seed=args.seed, width=args.precision)
    csv = series.to_csv()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(csv)
        summary = f"family: {family.value}\nexponent: {series.fitted_exponent:.6f}\nr2: {series.fit_r2:.6f}\nwrote: {args.out}"
        _emit(args, series.to_tree(), summary)
    else:
        _emit(args, series.to_tree(), csv)
    return EXIT_OK


COMMANDS = {"decompose": cmd_decompose, "classify": cmd_classify, "scatter": cmd_scatter, "expand": cmd_expand}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except (UsageError, ParseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (TrivialDependence, DegenerateParameters, UnreachableCardinality) as e:
        print(f"precondition violated: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except PrecisionExhausted as e:
        print(f"precision exhausted: {e}", file=sys.stderr)
        return EXIT_PRECISION
    except CertificateError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as e:
        print(f"precondition violated: {e}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
