"""``analytic-series`` command line entry point.

Exit codes: 0 when no check fails, 1 on any fail (or any inconclusive with
``--strict``), 2 on usage, parse or elaboration errors.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources

from ..errors import SeriesError
from .report import emit_report
from .suites import SUITES, SuiteConfig, load_definitions, run_suite


def _radii(text: str) -> tuple:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid radii list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="analytic-series",
                                description="Run numerical verifier suites over series definitions.")
    p.add_argument("definitions", nargs="?",
                   help="file of 'name = expression' lines (default: bundled corpus)")
    p.add_argument("--suite", default="all", choices=("all",) + SUITES)
    p.add_argument("--order", type=int, default=32, help="truncation order (default 32)")
    p.add_argument("--tolerance", type=float, default=None,
                   help="override the per-check tolerance")
    p.add_argument("--samples", type=int, default=1024, help="circle sample count")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--radii", type=_radii, default=None,
                   help="comma-separated radii, e.g. 0.5,1,2")
    p.add_argument("--report", default=None, help="output path (default: stdout)")
    p.add_argument("--format", default="json", choices=("json", "csv"))
    p.add_argument("--strict", action="store_true", help="treat inconclusive as failure")
    return p


def _read_definitions(path) -> str:
    if path is None:
        return resources.files("analytic_series").joinpath("data/default_corpus.txt") \
            .read_text(encoding="utf-8")
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = SuiteConfig(suite=args.suite, order=args.order, tolerance=args.tolerance,
                             samples=args.samples, seed=args.seed, radii=args.radii)
        definitions = load_definitions(_read_definitions(args.definitions), config.order)
        report = run_suite(config, definitions)
    except (SeriesError, OSError) as exc:
        print(f"analytic-series: error: {exc}", file=sys.stderr)
        return 2
    try:
        text = emit_report(report, args.format, args.report)
    except OSError as exc:
        print(f"analytic-series: error: {exc}", file=sys.stderr)
        return 2
    if args.report is None:
        sys.stdout.write(text)
    return report.exit_code(args.strict)


if __name__ == "__main__":
    sys.exit(main())
