"""Command line front end.

Exit codes: 0 success, 1 a verification check failed, 2 usage error,
3 invalid input data. Data goes to stdout, progress to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from rrgmoves import qseries
from rrgmoves.bijection import (
    InvalidPartition,
    MalformedTriple,
    MoveTriple,
    StuckError,
    from_triple,
    to_triple,
    triple_payload,
)
from rrgmoves.enumeration import SIDES, count_table
from rrgmoves.partition import Partition
from rrgmoves.verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 3

log = logging.getLogger("rrgmoves")


class DataError(Exception):
    pass


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise DataError(f"not a comma-separated integer list: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rrgmoves", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="progress lines on stderr")
    parser.add_argument(
        "--jobs", type=_positive, default=None, help="worker processes for sharded work (default: all CPUs)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="tabulate one side of an RRG identity by brute force")
    p.add_argument("--side", choices=SIDES, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--max-n", type=_nonneg, required=True)
    p.add_argument("--by-parts", action="store_true", help="one row per (weight, part count)")

    p = sub.add_parser("series", help="print a truncated series")
    p.add_argument("--which", choices=("t1", "t2", "t3", "andrews3", "product"), required=True)
    p.add_argument("--a", type=int, help="required for --which product")
    p.add_argument("--k", type=int, default=3, help="modulus parameter for --which product")
    p.add_argument("--qmax", type=_nonneg, required=True)
    p.add_argument("--xmax", type=_nonneg, help="largest x-degree kept (default: qmax)")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")

    p = sub.add_parser("bijection", help="map a partition to its triple or back")
    p.add_argument("direction", choices=("forward", "backward"))
    p.add_argument("--a", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--partition", help="comma-separated, weakly decreasing (backward)")
    p.add_argument("--pairs", type=_nonneg)
    p.add_argument("--singletons", type=_nonneg)
    p.add_argument("--mu", default="", help="comma-separated doubled pair move counts (forward)")
    p.add_argument("--nu", default="", help="comma-separated singleton move counts (forward)")
    p.add_argument("--trace", action="store_true")

    def add_verify_options(p):
        p.add_argument("--a", type=int, choices=(1, 2, 3))
        p.add_argument("--qmax", type=_positive, help="series truncation (suite-specific default)")
        p.add_argument("--max-weight", type=_positive, default=35)
        p.add_argument("--max-shape", type=_nonneg, default=6)
        p.add_argument("--json", action="store_true")
        p.add_argument("--timings", action="store_true", help="include elapsed ms in JSON records")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    add_verify_options(p)

    p = sub.add_parser("roundtrip", help="alias for verify --suite bijection")
    add_verify_options(p)
    return parser


def cmd_count(args, parser) -> int:
    if args.k < 2 or not 1 <= args.a <= args.k:
        parser.error(f"need k >= 2 and 1 <= a <= k, got k={args.k}, a={args.a}")
    table = count_table(args.k, args.a, args.side, args.max_n, workers=args.jobs)
    sys.stdout.write(table.to_tsv() if args.by_parts else table.totals_tsv())
    return EXIT_OK


def cmd_series(args, parser) -> int:
    xmax = args.qmax if args.xmax is None else args.xmax
    if args.which == "product":
        if args.a is None:
            parser.error("--which product requires --a")
        if args.k < 2 or not 1 <= args.a <= args.k:
            parser.error(f"need k >= 2 and 1 <= a <= k, got k={args.k}, a={args.a}")
        series = qseries.XQSeries(args.qmax, 0, {0: qseries.product_side(args.k, args.a, args.qmax)})
    elif args.which == "andrews3":
        series = qseries.XQSeries(args.qmax, 0, {0: qseries.andrews_sum_k3(args.qmax)})
    else:
        if args.a is not None and args.a != int(args.which[1]):
            parser.error(f"--which {args.which} fixes a={args.which[1]}")
        series = qseries.t_series(int(args.which[1]), args.qmax, xmax)
    out = series.to_json() + "\n" if args.format == "json" else series.to_tsv()
    sys.stdout.write(out)
    return EXIT_OK


def cmd_bijection(args, parser) -> int:
    if args.direction == "backward":
        if args.partition is None:
            parser.error("backward needs --partition")
        try:
            lam = Partition(_int_list(args.partition))
        except ValueError as exc:
            raise DataError(str(exc)) from None
        try:
            triple, trace = to_triple(args.a, lam)
        except InvalidPartition as exc:
            raise DataError(str(exc)) from None
    else:
        if args.pairs is None or args.singletons is None:
            parser.error("forward needs --pairs and --singletons")
        try:
            triple = MoveTriple(args.a, args.pairs, args.singletons, _int_list(args.mu), _int_list(args.nu))
        except MalformedTriple as exc:
            raise DataError(str(exc)) from None
        lam, trace = from_triple(triple)
    payload = triple_payload(triple, lam, trace if args.trace else None)
    sys.stdout.write(json.dumps(payload) + "\n")
    return EXIT_OK


def cmd_verify(args, parser) -> int:
    suite = "bijection" if args.command == "roundtrip" else args.suite
    report = run_suite(
        suite,
        a=args.a,
        qmax=args.qmax,
        max_weight=args.max_weight,
        max_shape=args.max_shape,
        workers=args.jobs,
    )
    sys.stdout.write(report.to_json(args.timings) + "\n" if args.json else report.to_text())
    return EXIT_OK if report.passed else EXIT_FAIL


COMMANDS = {
    "count": cmd_count,
    "series": cmd_series,
    "bijection": cmd_bijection,
    "verify": cmd_verify,
    "roundtrip": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(message)s",
        stream=sys.stderr,
    )
    if args.jobs is None:
        args.jobs = os.cpu_count() or 1
    try:
        return COMMANDS[args.command](args, parser)
    except DataError as exc:
        sys.stdout.write(json.dumps({"error": "invalid input", "detail": str(exc)}) + "\n")
        log.error("%s", exc)
        return EXIT_DATA
    except StuckError as exc:
        sys.stdout.write(json.dumps({"error": "stuck", "detail": str(exc)}) + "\n")
        log.error("%s", exc)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
