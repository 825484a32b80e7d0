from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from fuzzydepth.cli_io import PlotOptions, load_csv, load_report, write_report, write_sample_csv, write_svg
from fuzzydepth.config import PAIR_MODES, Settings, get_settings, seed_from_env
from fuzzydepth.depth_engine import median_trapezoid, rank_queries, rank_sample
from fuzzydepth.errors import DomainError, FuzzyDepthError
from fuzzydepth.stochastics import SimConfig, simulate_trapezoids
from fuzzydepth.verification import format_table, run_verification

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_VERIFY = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    parser = _Parser(prog="fuzzydepth", description="Simplicial-type depths for trapezoidal fuzzy data.")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    depth = commands.add_parser("depth", help="depth of every sample item (or of --queries rows)")
    depth.add_argument("csv", help="sample CSV, or - for stdin")
    depth.add_argument("--pairs", choices=PAIR_MODES, default=settings.pairs)
    depth.add_argument("--queries", help="CSV of query trapezoids evaluated against the sample")
    depth.add_argument("--out", default="-", help="report path (default stdout)")
    depth.add_argument("--format", choices=("csv", "json"), default="csv")
    depth.add_argument("--workers", type=int, default=settings.workers)

    median = commands.add_parser("median", help="coordinate-wise median trapezoid")
    median.add_argument("csv")

    simulate = commands.add_parser("simulate", help="draw a seeded trapezoidal sample")
    simulate.add_argument("--n", type=int, required=True)
    simulate.add_argument("--seed", type=int, default=None)
    simulate.add_argument("--sigma", type=float, default=10.0)
    simulate.add_argument("--dof", type=int, default=1)
    simulate.add_argument("--out", default="-")

    plot = commands.add_parser("plot", help="SVG of the sample coloured by depth rank")
    plot.add_argument("csv")
    plot.add_argument("--report", required=True)
    plot.add_argument("--top", type=int, default=settings.top_k)
    plot.add_argument("--bottom", type=int, default=settings.bottom_k)
    plot.add_argument("--median", action="store_true")
    plot.add_argument("--by", choices=("nS", "mS", "FS"), default="mS")
    plot.add_argument("--out", required=True)

    verify = commands.add_parser("verify", help="run the oracle and Monte Carlo cross-checks")
    verify.add_argument("--trials", type=int, default=100_000)
    verify.add_argument("--seed", type=int, default=None)
    return parser


def _depth(args: argparse.Namespace) -> int:
    if args.workers < 1:
        raise DomainError(f"--workers must be >= 1, got {args.workers}")
    if args.csv == "-" and args.queries == "-":
        raise DomainError("sample and queries cannot both come from stdin")
    sample = load_csv(args.csv)
    if args.queries:
        report = rank_queries(sample, load_csv(args.queries), pairs=args.pairs, workers=args.workers)
    else:
        report = rank_sample(sample, pairs=args.pairs, workers=args.workers)
    write_report(report, args.out, args.format)
    return EXIT_OK


def _median(args: argparse.Namespace) -> int:
    m = median_trapezoid(load_csv(args.csv))
    print(f"Tra({m.a:.12g}, {m.b:.12g}, {m.c:.12g}, {m.d:.12g})")
    return EXIT_OK


def _simulate(args: argparse.Namespace) -> int:
    cfg = SimConfig(n=args.n, seed=seed_from_env(args.seed), sigma=args.sigma, dof=args.dof)
    write_sample_csv(simulate_trapezoids(cfg), args.out)
    return EXIT_OK


def _plot(args: argparse.Namespace) -> int:
    options = PlotOptions(
        top_k=args.top,
        bottom_k=args.bottom,
        highlight_median=args.median,
        functional=args.by,
    )
    write_svg(load_csv(args.csv), load_report(args.report), args.out, options)
    return EXIT_OK


def _verify(args: argparse.Namespace) -> int:
    results = run_verification(trials=args.trials, seed=seed_from_env(args.seed))
    print(format_table(results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


HANDLERS = {
    "depth": _depth,
    "median": _median,
    "simulate": _simulate,
    "plot": _plot,
    "verify": _verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        settings = get_settings()
    except FuzzyDepthError as exc:
        print(f"fuzzydepth: {exc}", file=sys.stderr)
        return EXIT_DATA
    logging.basicConfig(
        level=settings.log_level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        args = build_parser(settings).parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return HANDLERS[args.command](args)
    except FuzzyDepthError as exc:
        logger.debug("%s failed", args.command, exc_info=True)
        print(f"fuzzydepth {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA
