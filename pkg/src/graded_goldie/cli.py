"""Command-line entry point: ``verify <suite> [flags]``."""

import argparse
import logging
import os
import sys

from graded_goldie import __version__
from graded_goldie.config import PARAMETER_DEFAULTS, load_settings, resolve_parameters
from graded_goldie.constants import LOG_LEVEL_ENV
from graded_goldie.exceptions import (
    ConfigError,
    ExponentOnlyIntegral,
    ExpressionSyntaxError,
    InvalidGroupTable,
    UnknownGenerator,
    UnknownSymbol,
)
from graded_goldie.report import publish_report
from graded_goldie.scalars import CoefficientField
from graded_goldie.suites import SUITE_NAMES, SuiteContext, run_suite

logger = logging.getLogger(__name__)

EXIT_USAGE = 3

# Errors that mean the invocation itself is wrong
USAGE_ERRORS = (
    ConfigError,
    ExpressionSyntaxError,
    UnknownSymbol,
    UnknownGenerator,
    ExponentOnlyIntegral,
    InvalidGroupTable,
)


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_args(argv=None):
    parser = _ArgumentParser(prog="verify", description="Exact checks of graded Goldie conditions and counterexamples.")
    parser.add_argument("suite", choices=SUITE_NAMES, help="Suite to run")
    parser.add_argument("--group", help="Grading group, e.g. d-infty, bs12, integers, S3, cyclic:4, table")
    parser.add_argument("--g", help="Group word for g")
    parser.add_argument("--h", help="Group word for h")
    parser.add_argument("--n-max", type=int, help="Exponent bound for condition (2) searches")
    parser.add_argument("--m-max", type=int, help="Exponent bound for (2)' and obstruction searches")
    parser.add_argument("--max-degree", type=int, help="Polynomial degree window for annihilators and censuses")
    parser.add_argument("--coeff-bound", type=int, help="Polynomial degree bound for sampled elements")
    parser.add_argument("--order-bound", type=int, help="Bound for element order computations")
    parser.add_argument("--samples", type=int, help="Sample count for randomized audits")
    parser.add_argument("--seed", type=int, help="Random seed (default 0)")
    parser.add_argument("--field", help="Coefficient field: q or fp:P")
    parser.add_argument("--out", help="Output destination: file path, s3://bucket/key or - for stdout")
    parser.add_argument("--format", choices=("json", "text"), default="json", help="Report format")
    parser.add_argument("--config", help="JSON settings file")
    parser.add_argument("--group-table", help="JSON multiplication table for --group table")
    parser.add_argument("--timings", action="store_true", help="Record elapsed time per check")
    parser.add_argument("--log-level", help="Logging level (default: LOG_LEVEL or INFO)")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser.parse_args(argv)


def configure_logging(level=None):
    level = (level or os.environ.get(LOG_LEVEL_ENV) or "INFO").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _validate(suite, parameters, table_path):
    """Fail fast on a bad field, group or word before any check runs."""
    CoefficientField.from_flag(parameters["field"])
    ctx = SuiteContext(suite, parameters, table_path=table_path)
    if parameters["group"]:
        ctx.group
    if parameters["g"] or parameters["h"]:
        ctx.pair()


def main(argv=None):
    """Run a suite and publish its report.

    Returns:
        int: 0 all pass, 1 any fail, 2 any exhausted without a fail, 3 usage error.
    """
    args = parse_args(argv)
    configure_logging(args.log_level)
    try:
        settings = load_settings(args.config)
        cli_values = {name: getattr(args, name) for name in PARAMETER_DEFAULTS}
        parameters = resolve_parameters(args.suite, cli_values, settings)
        _validate(args.suite, parameters, args.group_table)
    except USAGE_ERRORS as e:
        logger.error("Invalid invocation: %s", e)
        return EXIT_USAGE
    report = run_suite(args.suite, parameters, timings=args.timings, table_path=args.group_table)
    publish_report(report, args.out, args.format)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
