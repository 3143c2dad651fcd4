"""Command line interface.

Exit codes: 0 verified, 1 mathematical counterexample or method mismatch,
2 input or usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import verify
from .enumerate import N_MAX, enumerate_triangulations
from .curvature import CurvatureError
from .formulas import ConfigError
from .graph import (
    GraphError,
    find_maximal_outerplanar_witness,
    parse_graph_input,
    to_dot,
)
from fractions import Fraction

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _read_input(source: str) -> tuple[str, str]:
    """Return ``(text, graph id)`` for a path, ``-`` (stdin) or a literal graph."""
    if source == "-":
        return sys.stdin.read(), "stdin"
    path = Path(source)
    if path.is_file():
        return path.read_text(encoding="utf-8"), path.name
    if source[:1] == "{" or source[:1].isdigit():
        return source, source.strip() if source[:1].isdigit() else "inline"
    raise UsageError(f"cannot read graph input {source!r}")


def _check_n(n: int, low: int) -> int:
    if not low <= n <= N_MAX:
        raise UsageError(f"n must lie in [{low}, {N_MAX}]")
    return n


def cmd_curvature(args) -> int:
    text, graph_id = _read_input(args.input)
    g, _ = parse_graph_input(text)
    witness = find_maximal_outerplanar_witness(g)
    if args.method == "closed-form" and witness is None:
        raise UsageError("closed-form curvature needs a maximal outerplanar graph")
    report = verify.curvature_report(g, graph_id, args.method, witness)
    if args.format == "dot":
        kappa = {(r["u"], r["v"]): Fraction(r["kappa"]) for r in report["edges"]}
        _emit(to_dot(g, witness, kappa), args.out)
    elif args.format == "csv":
        _emit(verify.report_to_csv(report), args.out)
    else:
        _emit(_dump(report), args.out)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    n = _check_n(args.n, 3)
    _emit("".join(t.to_code() + "\n" for t in enumerate_triangulations(n)), args.out)
    return EXIT_OK


def _summary(result: dict, args) -> int:
    _emit(_dump(result), args.out)
    return EXIT_OK if result["ok"] else EXIT_COUNTEREXAMPLE


def cmd_theorem3(args) -> int:
    return _summary(verify.verify_theorem3(_check_n(args.n_max, 4), args.jobs), args)


def cmd_theorem4(args) -> int:
    return _summary(verify.verify_theorem4(_check_n(args.n, 3), args.jobs), args)


def cmd_tables(args) -> int:
    return _summary(verify.verify_tables(_check_n(args.n_max, 3), args.jobs), args)


def cmd_lemma4(args) -> int:
    return _summary(verify.verify_lemma4(_check_n(args.n_max, 3), args.jobs), args)


def cmd_lemma1(args) -> int:
    return _summary(verify.verify_lemma1(_check_n(args.n_max, 3), args.jobs), args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="outerlly",
        description="Exact Lin-Lu-Yau curvature and outerplanar verification.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this path instead of stdout")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for corpus checks")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curvature", parents=[common], help="per-edge curvature report")
    p.add_argument("input", help="graph JSON or triangulation code: a file, '-' for stdin, or literal text")
    p.add_argument("--method", choices=verify.METHODS, default=None,
                   help="default: all for maximal outerplanar inputs, search otherwise")
    p.add_argument("--format", choices=("json", "dot", "csv"), default="json")
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("enumerate", parents=[common], help="canonical triangulation codes, one per line")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify-theorem3", parents=[common], help="max degree <= 9 on the corpus")
    p.add_argument("n_max", type=int, nargs="?", default=verify.DEFAULT_N_MAX)
    p.set_defaults(func=cmd_theorem3)

    p = sub.add_parser("verify-theorem4", parents=[common], help="verdicts for all graphs on n vertices")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_theorem4)

    p = sub.add_parser("verify-tables", parents=[common], help="closed forms vs. solvers and tables")
    p.add_argument("--n-max", type=int, default=11)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("lemma4", parents=[common], help="neighborhoods induce paths")
    p.add_argument("n_max", type=int, nargs="?", default=verify.DEFAULT_N_MAX)
    p.set_defaults(func=cmd_lemma4)

    p = sub.add_parser("lemma1", parents=[common], help="neighborhood inequality on positively curved graphs")
    p.add_argument("--n-max", type=int, default=11)
    p.set_defaults(func=cmd_lemma1)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    if args.jobs < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except verify.MethodMismatch as exc:
        print(f"method mismatch: {exc}", file=sys.stderr)
        return EXIT_COUNTEREXAMPLE
    except (UsageError, GraphError, ConfigError, CurvatureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
