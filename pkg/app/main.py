"""
leech-magic command line.

    leech-magic expand phi --order 3
    leech-magic certify --order q60 --out report.json
    leech-magic eval f --r 0 1.4142135623730951
    leech-magic eval fhat --grid 0:3:31 --format csv
    leech-magic values --format text

Exit codes: 0 success, 1 a certificate failed, 2 bad input.
"""
import argparse
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from app import __version__
from app.errors import LeechError, UnknownFormError
from app.orchestrator.commands import cmd_certify, cmd_eval, cmd_expand, cmd_values
from app.orchestrator.report import RunConfig, parse_order
from app.settings import settings
from app.utils.logging_config import setup_logging

logger = setup_logging(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=parse_order, default=None,
                        help=f"Truncation order in q, e.g. 60 or q60 (default: {settings.TRUNCATION_ORDER}).")
    common.add_argument("--digits", type=int, default=None,
                        help=f"Decimal digits for numeric output (default: {settings.EVAL_DIGITS}).")
    common.add_argument("--format", choices=["json", "csv", "text"], default=None,
                        help=f"Output format (default: {settings.OUTPUT_FORMAT}).")
    common.add_argument("--out", type=Path, default=None, help="Write output to this file instead of stdout.")
    common.add_argument("--jobs", type=int, default=None,
                        help=f"Worker processes for independent tasks (default: {settings.JOBS}).")

    p = argparse.ArgumentParser(
        prog="leech-magic",
        description="Exact q-series, Sturm certificates and evaluation of the 24-dimensional magic function.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    expand = sub.add_parser("expand", parents=[common], help="Print the exact q-expansion of a named form.")
    expand.add_argument("form", help="phi, Phi1, Phi2, psiI, psiS, psiT, E2, E4, E6, Delta, ...")

    certify = sub.add_parser("certify", parents=[common], help="Run every certificate and write the report.")
    certify.add_argument("--inject-fault", dest="inject_fault", default=None, metavar="FORM:TWICE_EXP",
                         help="Perturb one catalog coefficient before certifying (test hook).")

    evaluate = sub.add_parser("eval", parents=[common], help="Evaluate f, fhat, a or b at radii.")
    evaluate.add_argument("which", choices=["f", "fhat", "a", "b"])
    where = evaluate.add_mutually_exclusive_group(required=True)
    where.add_argument("--r", nargs="+", default=None, help="Radii (decimal strings are kept exact).")
    where.add_argument("--grid", default=None, metavar="START:STOP:COUNT", help="Evenly spaced radii.")

    sub.add_parser("values", parents=[common], help="Exact special values, numeric samples and the density bound.")
    return p


def _config(args: argparse.Namespace, with_order: bool = True) -> RunConfig:
    fields = {
        "order": args.order if with_order else None,
        "digits": args.digits,
        "format": args.format,
        "out": args.out,
        "jobs": args.jobs,
        "inject_fault": getattr(args, "inject_fault", None),
    }
    return RunConfig(**{k: v for k, v in fields.items() if v is not None})


def run(args: argparse.Namespace) -> int:
    if args.command == "expand":
        # expand takes any positive order, not only certification-sized ones
        return cmd_expand(args.form, args.order, _config(args, with_order=False), stream=sys.stdout)
    if args.command == "certify":
        return cmd_certify(_config(args), stream=sys.stdout)
    if args.command == "eval":
        return cmd_eval(args.which, args.r, args.grid, _config(args), stream=sys.stdout)
    if args.command == "values":
        return cmd_values(_config(args), stream=sys.stdout)
    raise ValueError(f"unknown command '{args.command}'")


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        return run(args)
    except ValidationError as e:
        logger.error(f"Invalid options: {e.errors(include_url=False)}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (UnknownFormError, ValueError) as e:
        logger.error(f"Invalid input: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except LeechError as e:
        logger.error(f"{type(e).__name__}: {e}", exc_info=settings.DEBUG)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
