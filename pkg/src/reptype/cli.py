"""Command line surface for reptype.

Every subcommand runs through ``ClassifierService`` and prints its report on
stdout. Errors go to stderr verbatim.

Usage:
    reptype p relation.json --decimal                 # P = 12/5 (2.4)
    reptype norm relation.json --witness
    reptype rho 5 2 1                                 # 4
    reptype mu 1 1 0
    reptype triangle 2 3 5                            # 120
    reptype classify poset poset.json
    reptype classify graph e6.json --mode integral
    reptype classify dyadic set.json --edge-order literal --condA-scope long
    reptype catalog II --bound 6
    reptype verify-faithful --max-n 6
    reptype critical-scan --max-points 5
    reptype mu4-cases
    reptype oracle norm relation.json --depth 12
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from reptype.core.config import settings
from reptype.core.errors import ReptypeError
from reptype.core.logging import CLI_FORMAT, configure_logging
from reptype.services.classifier import RunFlags
from reptype.services.documents import load, parse

logger = logging.getLogger(__name__)

KINDS = ("poset", "eqposet", "dyadic", "graph", "quiver")


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=None, help="Enumeration cap for this run")
    common.add_argument("--edge-order", choices=["containment", "literal"], default=None)
    common.add_argument("--condA-scope", dest="cond_a_scope", choices=["all", "long"], default=None)
    common.add_argument("--motif", choices=["ordered", "strict"], default=None,
                        help="Condition C motif: b <= c (ordered) or b < c (strict)")
    common.add_argument("--decimal", action="store_true", help="Annotate fractions with decimals")
    common.add_argument("--witness", action="store_true", help="Print witnessing data")
    common.add_argument("--mode", choices=["integral", "coxeter"], default="integral",
                        help="Graph classification mode")
    common.add_argument("--log-level", default=None, help="Override LOG_LEVEL")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="reptype",
        description="Exact representation-type classifiers",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Commands:
  norm, p, faithful    Norm, P and P-faithfulness of a relation document
  rho, mu, triangle    Separating functions; 'inf' is accepted
  classify KIND FILE   poset | eqposet | dyadic | graph | quiver
  catalog LIST         Members of list I, II, III or IV
  verify-faithful      Shapes of P-faithful connected posets
  critical-scan        Critical dyadic sets by exhaustive search
  mu4-cases            Equality cases of the edge condition against the reference list
  oracle norm FILE     Floating point cross-check of the norm

Exit codes: 0 ok, 1 Wild / NotFinite verdict, 2 input error, 3 cap exceeded.
""",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("norm", "p", "faithful"):
        cmd = sub.add_parser(name, parents=[common])
        cmd.add_argument("file", help="Relation document ('-' for stdin)")

    cmd = sub.add_parser("rho", parents=[common])
    cmd.add_argument("numbers", nargs="+")
    for name in ("mu", "triangle"):
        cmd = sub.add_parser(name, parents=[common])
        cmd.add_argument("numbers", nargs=3)

    cmd = sub.add_parser("classify", parents=[common])
    cmd.add_argument("kind", choices=KINDS)
    cmd.add_argument("file")

    cmd = sub.add_parser("catalog", parents=[common])
    cmd.add_argument("list_id", choices=["I", "II", "III", "IV"])
    cmd.add_argument("--bound", type=int, default=8)

    cmd = sub.add_parser("verify-faithful", parents=[common])
    cmd.add_argument("--max-n", type=int, default=6)

    cmd = sub.add_parser("critical-scan", parents=[common])
    cmd.add_argument("--max-points", type=int, default=5)

    sub.add_parser("mu4-cases", parents=[common])

    cmd = sub.add_parser("oracle", parents=[common])
    cmd.add_argument("oracle", choices=["norm"])
    cmd.add_argument("file")
    cmd.add_argument("--depth", type=int, default=None)
    return parser


def _document(path: str):
    if path == "-":
        return parse(sys.stdin.read())
    return load(path)


def _flags(args: argparse.Namespace) -> RunFlags:
    flags = RunFlags(
        cap=args.cap,
        edge_order=args.edge_order,
        cond_a_scope=args.cond_a_scope,
        motif=args.motif,
        decimal=args.decimal,
        witness=args.witness,
        mode=args.mode,
    )
    if args.command in ("rho", "mu", "triangle"):
        flags.args = list(args.numbers)
    elif args.command == "classify":
        flags.kind = args.kind
    elif args.command == "catalog":
        flags.args = [args.list_id]
        flags.bound = args.bound
    elif args.command == "verify-faithful":
        flags.max_n = args.max_n
    elif args.command == "critical-scan":
        flags.max_points = args.max_points
    elif args.command == "oracle":
        flags.args = [args.oracle]
        flags.depth = args.depth
    return flags


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level or settings.log_level, settings.log_file, CLI_FORMAT)

    from reptype.services import classifier_service

    try:
        document = _document(args.file) if hasattr(args, "file") else None
        report = classifier_service.run(args.command, document, _flags(args))
    except ReptypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    sys.stdout.write(report.text)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
