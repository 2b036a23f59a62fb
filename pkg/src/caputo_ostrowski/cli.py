"""Command line front end.

Subcommands::

    eval {rl-left,rl-right,caputo-right,taylor}   pointwise operator value
    verify                                        inequality campaign report
    converge {rl-left,rl-right,caputo-right,taylor}  panel-refinement table

Exit codes: 0 success, 1 evaluation failure, 2 usage or validation error,
3 a violated verdict for a theorem other than A2_STATED.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence

from caputo_ostrowski import __version__
from caputo_ostrowski.errors import DomainError, HypothesisError
from caputo_ostrowski.functions import (
    FUNCTION_SPEC_GRAMMAR,
    FractionalSetup,
    Interval,
    ModelFunction,
    parse_function_spec,
)
from caputo_ostrowski.inequalities import TheoremId, run_campaign
from caputo_ostrowski.operators import (
    FractionalEvaluation,
    caputo_right,
    rl_integral_left,
    rl_integral_right,
    taylor_reconstruct,
)
from caputo_ostrowski.quadrature import DEFAULT_PANELS
from caputo_ostrowski.report_io import (
    CSV_COLUMNS,
    campaign_to_json,
    format_float,
    reports_to_csv,
)

OPERATORS = ("rl-left", "rl-right", "caputo-right", "taylor")
CONVERGE_PANELS = (64, 128, 256, 512, 1024)
CONVERGE_COLUMNS = ("n_panels", "value", "abs_error_vs_oracle", "empirical_order")

EXIT_OK, EXIT_EVAL, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2, 3


class UsageError(Exception):
    """Invalid command line input; the message names the offending flag."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return v


def _float_list(text: str) -> list[float]:
    return [_float(item) for item in text.split(",") if item.strip()]


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _theorem_list(text: str) -> list[TheoremId]:
    out = []
    for item in text.split(","):
        item = item.strip().upper()
        if not item:
            continue
        try:
            out.append(TheoremId(item))
        except ValueError:
            names = ", ".join(t.value for t in TheoremId)
            raise argparse.ArgumentTypeError(f"unknown theorem {item!r} (choose from {names})") from None
    if not out:
        raise argparse.ArgumentTypeError("theorem list is empty")
    return out


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--a", type=_float, default=0.0, help="left endpoint (default 0)")
    p.add_argument("--b", type=_float, default=1.0, help="right endpoint (default 1)")
    p.add_argument(
        "--grid-n", type=_positive_int, default=DEFAULT_PANELS,
        help=f"quadrature panels (default {DEFAULT_PANELS})",
    )
    p.add_argument("--out", help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="caputo-ostrowski",
        description="Right Caputo fractional operators and Ostrowski-type bound checks.",
        epilog=FUNCTION_SPEC_GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ev = sub.add_parser(
        "eval", help="evaluate one operator at a point",
        epilog=FUNCTION_SPEC_GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    ev.add_argument("operator", choices=OPERATORS)
    ev.add_argument("--f", required=True, help="function spec (see grammar below)")
    ev.add_argument("--alpha", type=_float, required=True, help="fractional order")
    ev.add_argument("--x", type=_float, required=True, help="evaluation point")
    ev.add_argument(
        "--method", choices=("auto", "quadrature"), default="auto",
        help="force the quadrature path instead of closed forms",
    )
    ev.add_argument("--format", choices=("text", "json", "csv"), default="text")
    _add_common(ev)

    ver = sub.add_parser(
        "verify", help="run an inequality campaign",
        epilog=FUNCTION_SPEC_GRAMMAR + "\n\nCSV columns: " + ",".join(CSV_COLUMNS),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    ver.add_argument(
        "--theorems", type=_theorem_list, required=True,
        help="comma separated: " + ",".join(t.value for t in TheoremId),
    )
    ver.add_argument("--alpha", type=_float_list, required=True, help="comma separated orders")
    ver.add_argument("--p", type=_float_list, default=[], help="comma separated Hoelder p values")
    ver.add_argument("--corpus", type=_positive_int, default=200, help="random functions per order")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--f", help="use this f instead of the random corpus")
    ver.add_argument("--g", help="use this g instead of the random corpus")
    ver.add_argument("--tol", type=_float, default=0.0, help="extra absolute tolerance per verdict")
    ver.add_argument("--format", choices=("json", "csv"), default="json")
    _add_common(ver)

    conv = sub.add_parser(
        "converge", help="convergence table against a closed form",
        epilog=FUNCTION_SPEC_GRAMMAR + "\n\nCSV columns: " + ",".join(CONVERGE_COLUMNS)
        + "\npanels: " + ",".join(map(str, CONVERGE_PANELS))
        + "\nempirical_order = log2(err(n/2) / err(n))",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    conv.add_argument("operator", choices=OPERATORS)
    conv.add_argument("--f", required=True, help="function spec with a closed form")
    conv.add_argument("--alpha", type=_float, required=True)
    conv.add_argument("--x", type=_float, default=None, help="evaluation point (default a)")
    conv.add_argument("--format", choices=("csv",), default="csv")
    _add_common(conv)
    return parser


# {{{ helpers


def _interval(args) -> Interval:
    try:
        return Interval(args.a, args.b)
    except DomainError as exc:
        raise UsageError(f"argument --a/--b: {exc}") from None


def _function(text: str, iv: Interval, flag: str) -> ModelFunction:
    try:
        return parse_function_spec(text, iv)
    except (ValueError, DomainError) as exc:
        raise UsageError(f"argument {flag}: {exc}") from None


def _setup(alpha: float, p: float | None = None) -> FractionalSetup:
    try:
        return FractionalSetup(alpha, p)
    except DomainError as exc:
        flag = "--alpha" if p is None else "--alpha/--p"
        raise UsageError(f"argument {flag}: {exc}") from None


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _apply(op: str, f: ModelFunction, alpha: float, x: float, n: int, method: str) -> FractionalEvaluation:
    if op == "rl-left":
        return rl_integral_left(f, alpha, x, n, method)
    if op == "rl-right":
        return rl_integral_right(f, alpha, x, n, method)
    setup = FractionalSetup(alpha)
    if op == "caputo-right":
        return caputo_right(f, setup, x, n, method)
    return taylor_reconstruct(f, setup, x, n, method)


# }}}

# {{{ commands


def cmd_eval(args) -> int:
    iv = _interval(args)
    f = _function(args.f, iv, "--f")
    if args.alpha < 0 or (args.alpha == 0 and args.operator in ("caputo-right", "taylor")):
        raise UsageError(f"argument --alpha: must be > 0 for {args.operator}, got {args.alpha}")
    if not iv.contains(args.x):
        raise UsageError(f"argument --x: {args.x} lies outside [{iv.a}, {iv.b}]")

    ev = _apply(args.operator, f, args.alpha, args.x, args.grid_n, args.method)
    if args.format == "json":
        text = json.dumps(
            {"operator": args.operator, "value": ev.value, "err_estimate": ev.err_estimate, "method": ev.method}
        ) + "\n"
    elif args.format == "csv":
        text = "value,err_estimate,method\n" + (
            f"{format_float(ev.value)},{format_float(ev.err_estimate)},{ev.method}\n"
        )
    else:
        text = (
            f"value: {format_float(ev.value)}\n"
            f"err_estimate: {format_float(ev.err_estimate)}\n"
            f"method: {ev.method}\n"
        )
    _write(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    iv = _interval(args)
    if not args.alpha:
        raise UsageError("argument --alpha: no orders given")
    for alpha in args.alpha:
        _setup(alpha)
    for p in args.p:
        if not p > 1:
            raise UsageError(f"argument --p: p must be > 1, got {p}")
    if any(t.needs_holder for t in args.theorems) and not args.p:
        raise UsageError("argument --p: required by Z3, A2_STATED and A2_CORRECTED")
    if args.tol < 0:
        raise UsageError(f"argument --tol: must be >= 0, got {args.tol}")
    f = _function(args.f, iv, "--f") if args.f else None
    g = _function(args.g, iv, "--g") if args.g else None

    campaign = run_campaign(
        args.alpha, args.theorems, args.corpus, args.seed, ps=args.p, iv=iv,
        n_panels=args.grid_n, extra_tol=args.tol, f_override=f, g_override=g,
    )
    if args.format == "csv":
        text = reports_to_csv(campaign.reports)
    else:
        meta = {
            "version": __version__,
            "seed": args.seed,
            "theorems": [t.value for t in args.theorems],
            "alphas": args.alpha,
            "ps": args.p,
            "interval": {"a": iv.a, "b": iv.b},
            "corpus": 1 if f is not None else args.corpus,
            "f": args.f,
            "g": args.g,
            "grid_n": args.grid_n,
            "tol": args.tol,
        }
        text = campaign_to_json(campaign, meta)
    _write(text, args.out)

    summary = campaign.summary
    stated = summary.get("a2_discrepancy", {}).get("stated_violations", 0)
    if stated:
        print(f"note: {stated} A2_STATED violation(s) flagged in the summary", file=sys.stderr)
    if summary["sound_violations"]:
        print(f"error: {summary['sound_violations']} violated verdict(s)", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def _oracle(op: str, f: ModelFunction, alpha: float, x: float) -> float:
    if op == "taylor":
        return float(f(x))
    return _apply(op, f, alpha, x, DEFAULT_PANELS, "closed_form").value


def cmd_converge(args) -> int:
    iv = _interval(args)
    f = _function(args.f, iv, "--f")
    x = iv.a if args.x is None else args.x
    if not iv.contains(x):
        raise UsageError(f"argument --x: {x} lies outside [{iv.a}, {iv.b}]")
    if not args.alpha > 0:
        raise UsageError(f"argument --alpha: must be > 0, got {args.alpha}")
    if args.operator in ("caputo-right", "taylor") and FractionalSetup(args.alpha).is_integer_order:
        raise UsageError("argument --alpha: integer orders are evaluated exactly; nothing to converge")
    try:
        exact = _oracle(args.operator, f, args.alpha, x)
    except DomainError as exc:
        print(f"caputo-ostrowski: error: argument --f: no closed-form oracle ({exc})", file=sys.stderr)
        return EXIT_USAGE

    lines = [",".join(CONVERGE_COLUMNS)]
    prev = None
    for n in CONVERGE_PANELS:
        value = _apply(args.operator, f, args.alpha, x, n, "quadrature").value
        err = abs(value - exact)
        order = ""
        if prev is not None and prev > 0 and err > 0:
            order = format_float(math.log2(prev / err))
        lines.append(f"{n},{format_float(value)},{format_float(err)},{order}")
        prev = err
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# }}}


COMMANDS = {"eval": cmd_eval, "verify": cmd_verify, "converge": cmd_converge}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, HypothesisError, ArithmeticError) as exc:
        print(f"{parser.prog}: evaluation failed: {exc}", file=sys.stderr)
        return EXIT_EVAL


if __name__ == "__main__":
    sys.exit(main())
