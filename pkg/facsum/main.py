#!/usr/bin/env python3
"""
Facsum - exact summation reduction and factorial transforms
Description: Command-line front end for triangles, reduced sums, rising and
falling factorial transforms, and the verification suites
"""

import sys
import asyncio
import argparse
import logging
from typing import List, Optional

from facsum import __version__
from facsum.app import SUITES, FacSum
from facsum.exceptions import ConfigurationError, FacsumException, ValidationError
from facsum.managers.report import ReportManager
from facsum.models import OutputFormat, SequenceKind, TransformOp, WeightKind
from facsum.utils import parse_rational, parse_rational_list, parse_real

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _typed(parse):
    """Wrap a literal parser so argparse reports failures as usage errors."""

    def convert(text: str):
        try:
            return parse(text)
        except (ValidationError, ValueError) as e:
            raise argparse.ArgumentTypeError(str(e))

    convert.__name__ = parse.__name__
    return convert


def _common_options(defaults: bool) -> argparse.ArgumentParser:
    """--format/--tol/--trace, accepted before or after the subcommand."""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default="text" if defaults else argparse.SUPPRESS,
        help="Output format (default: text)",
    )
    parser.add_argument(
        "--tol",
        type=_typed(parse_real),
        default=None if defaults else argparse.SUPPRESS,
        help="Relative tolerance for verify (default: [verify] tolerance)",
    )
    parser.add_argument(
        "--trace",
        action="store_true",
        default=False if defaults else argparse.SUPPRESS,
        help="Emit the reduction coefficient vectors",
    )
    return parser


def parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """Parse command-line arguments.

    Returns:
        Parsed arguments
    """
    parser = argparse.ArgumentParser(
        prog="facsum",
        description="Facsum - summation reduction and factorial transforms",
        parents=[_common_options(defaults=True)],
    )
    parser.add_argument(
        "-c",
        "--config",
        default=None,
        help="Path to an INI config file (default: built-in settings)",
    )
    parser.add_argument(
        "--log-level",
        default=None,
        help="Logging level (default: [general] log_level)",
    )
    parser.add_argument(
        "-v",
        "--version",
        action="version",
        version=f"Facsum {__version__}",
        help="Show version information and exit",
    )

    common = _common_options(defaults=False)
    commands = parser.add_subparsers(dest="command", required=True)
    kinds = [k.value for k in SequenceKind]

    table = commands.add_parser("table", parents=[common], help="Print a triangle")
    table.add_argument("kind", choices=kinds)
    table.add_argument("--n", type=int, required=True, help="Last row to print")
    table.add_argument("--r", type=int, default=0, help="r for the r-Stirling kinds")

    summation = commands.add_parser("sum", parents=[common], help="Reduce a row sum")
    summation.add_argument("kind", choices=kinds)
    summation.add_argument("--n", type=int, required=True, help="Upper row index")
    summation.add_argument("--n0", type=int, default=None, help="Lower bound (default: r)")
    summation.add_argument("--weight", choices=[w.value for w in WeightKind], default=None)
    summation.add_argument("--x", type=_typed(parse_rational), default=None, help="Exact p/q")
    summation.add_argument("--r", type=int, default=0, help="r for the r-Stirling kinds")

    transform = commands.add_parser("transform", parents=[common], help="Apply RFT or FFT")
    transform.add_argument("op", choices=[o.value for o in TransformOp])
    transform.add_argument(
        "--coeffs",
        type=_typed(parse_rational_list),
        required=True,
        help="Comma-separated power coefficients, lowest degree first",
    )
    transform.add_argument("--power", type=int, default=1, help="RFT power (default: 1)")

    verify = commands.add_parser("verify", parents=[common], help="Run verification suites")
    verify.add_argument("suite", choices=list(SUITES))

    return parser.parse_args(argv)


async def dispatch(app: FacSum, report: ReportManager, args: argparse.Namespace) -> int:
    """Route parsed arguments to the matching command."""
    if args.command == "table":
        return await app.cmd_table(report, SequenceKind(args.kind), args.n, args.r)
    if args.command == "sum":
        weight = WeightKind(args.weight) if args.weight else None
        return await app.cmd_sum(
            report,
            SequenceKind(args.kind),
            args.n,
            n0=args.n0,
            weight=weight,
            x=args.x,
            r=args.r,
            trace=args.trace,
        )
    if args.command == "transform":
        return await app.cmd_transform(report, TransformOp(args.op), args.power, args.coeffs)
    return await app.cmd_verify(report, args.suite, args.tol)


def run(argv: Optional[List[str]] = None) -> int:
    """Parse, run and map the outcome to an exit code."""
    try:
        args = parse_arguments(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        app = FacSum(args.config, args.log_level)
        report = ReportManager(sys.stdout, OutputFormat(args.format))
        return asyncio.run(dispatch(app, report, args))
    except KeyboardInterrupt:
        print("🔴 Interrupted!", file=sys.stderr)
        return EXIT_FAILED
    except ConfigurationError as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as e:
        print(f"Invalid arguments: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FacsumException as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        logging.error(f"💥 Unexpected error: {e}")
        print(f"Unexpected error: {e}", file=sys.stderr)
        return EXIT_FAILED


def main():
    """Main entry point for the application."""
    sys.exit(run())


if __name__ == "__main__":
    main()
