#!/usr/bin/env python3
"""Goldman CLI - brackets of closed curves on hyperbolic surfaces.

This is the main entry point for the bracket toolkit. Results go to stdout
(or --output) as JSON, JSON lines or CSV; diagnostics go to stderr.

Word grammar:
  lowercase letter = generator, uppercase = inverse ("a b A B"),
  "a^3", "b^-2" for powers, "1" or "" for the trivial class.
Chains:   "a b + 2*a B - 1/2*b"
Factors:  "T(a b)" (unoriented class), "U(a B)" (sign-twisted class)

Exit codes:
  0 success, 1 domain error, 2 unstable enumeration, 3 failed verification
"""

import argparse
import logging
import sys
from collections.abc import Sequence
from contextlib import nullcontext
from pathlib import Path
from typing import Any, TextIO

from core.bracket_service import BracketService, BracketServiceFactory
from core.brackets import TWG_FLAVORS
from core.errors import DomainError, UnstableEnumerationError
from core.verify import CLAIMS

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_UNSTABLE = 2
EXIT_FAILED = 3

EPILOG = """
Examples:
  # Goldman bracket of the two generators of the one-holed torus
  python main.py bracket goldman --surface torus1:u=4 --x "a" --y "b"

  # TWG bracket in the twisted/unoriented flavor
  python main.py bracket twg --flavor ut --x "a" --y "a b"

  # Deformed Poisson bracket at k = 1/2
  python main.py poisson --k 1/2 --x "T(a)" --y "U(b)"

  # Every verification claim, CSV summary
  python main.py verify all --format csv

  # Does the boundary class annihilate the simple list?
  python main.py annihilator-scan --beta "a b A B" --m-max 5
"""


class CliParser(argparse.ArgumentParser):
    """Argument errors are domain errors (exit 1)."""

    def error(self, message: str):
        raise DomainError(message)


def _common_options() -> argparse.ArgumentParser:
    common = CliParser(add_help=False)
    common.add_argument("--surface", help="Surface spec (torus1:u=4, pants:u=4,s=6) or YAML file")
    common.add_argument("--depth", type=int, help="Conjugator search depth (env GOLDMAN_DEPTH)")
    common.add_argument("--tol", type=float, help="Numeric tolerance (env GOLDMAN_TOL)")
    common.add_argument("--config", help="Configuration file (default: config.yaml)")
    common.add_argument("--format", choices=["json", "jsonl", "csv"], help="Output format")
    common.add_argument("--output", "-o", help="Write results to this file instead of stdout")
    common.add_argument("--m-max", type=int, help="Largest power m for scans")
    common.add_argument("--seed", type=int, help="Seed for sampled checks")
    common.add_argument(
        "--strict-positions",
        action="store_true",
        default=None,
        help="Treat coinciding intersection positions as an error",
    )
    common.add_argument("--log-file", help="Write the run log to this file")
    common.add_argument("--verbose", "-v", action="store_true", help="Debug logging on stderr")
    return common


def build_parser() -> CliParser:
    common = _common_options()
    parser = CliParser(
        prog="goldman",
        description="Goldman and TWG brackets of free homotopy classes on hyperbolic surfaces.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=EPILOG,
    )
    commands = parser.add_subparsers(dest="command", required=True, parser_class=CliParser)

    surface = commands.add_parser("surface", parents=[common], help="Surface model data")
    surface.add_argument("action", choices=["info", "certify"])
    surface.add_argument("--max-word-length", type=int, help="Certificate scan length")

    bracket = commands.add_parser("bracket", parents=[common], help="Goldman or TWG bracket")
    bracket.add_argument("kind", choices=["goldman", "twg"])
    bracket.add_argument("--flavor", choices=list(TWG_FLAVORS), default="tt")
    bracket.add_argument("--x", required=True, help="First chain")
    bracket.add_argument("--y", required=True, help="Second chain")

    intersect = commands.add_parser("intersect", parents=[common], help="Intersection points")
    intersect.add_argument("--x", required=True, help="First class")
    intersect.add_argument("--y", required=True, help="Second class")

    poisson = commands.add_parser("poisson", parents=[common], help="Deformed Poisson bracket")
    poisson.add_argument("--k", default="0", help="Deformation parameter, a rational")
    poisson.add_argument("--x", required=True, help="Polynomial, e.g. 'T(a)*U(b) + 1/2*T(a b)'")
    poisson.add_argument("--y", required=True, help="Polynomial")

    uea = commands.add_parser("uea", parents=[common], help="Enveloping algebra normal form")
    uea.add_argument("action", choices=["normal-form"])
    uea.add_argument("--word", required=True, help="Product of factors, e.g. 'U(b)*T(a)'")

    verify = commands.add_parser(
        "verify",
        parents=[common],
        help="Run verification claims",
        description="Claims: " + ", ".join(sorted(CLAIMS)),
    )
    verify.add_argument("claim", nargs="?", default="all", help="'all' or a claim id")

    scan = commands.add_parser(
        "annihilator-scan", parents=[common], help="Zero pattern of [alpha^m, beta]"
    )
    scan.add_argument("--beta", required=True, help="Chain to test against the simple list")
    return parser


def _load_config(args: argparse.Namespace) -> dict[str, Any]:
    """config.yaml or --config, then environment, then flags."""
    from config import apply_env_overrides, load_config

    config = apply_env_overrides(load_config(args.config))
    enumeration = dict(config.get("enumeration") or {})
    numerics = dict(config.get("numerics") or {})
    if args.depth is not None:
        enumeration["depth"] = args.depth
    if args.strict_positions is not None:
        enumeration["strict_positions"] = args.strict_positions
    if args.tol is not None:
        numerics["tolerance"] = args.tol
    config["enumeration"] = enumeration
    config["numerics"] = numerics
    return config


def _setup_logging(args: argparse.Namespace, config: dict[str, Any], stderr: TextIO):
    from config import get_logging_config
    from goldman_logging import GoldmanLogger

    settings = get_logging_config(config)
    level = logging.DEBUG if args.verbose else getattr(logging, settings["level"], logging.WARNING)
    root = logging.getLogger()
    root.setLevel(level)
    handler = logging.StreamHandler(stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    handler.set_name("goldman-cli")
    for existing in root.handlers[:]:
        if existing.get_name() == "goldman-cli":
            root.removeHandler(existing)
    root.addHandler(handler)

    run_logger = GoldmanLogger()
    log_file = args.log_file or settings["log_file"]
    if log_file:
        run_logger.setup_file_handler(Path(log_file))
    return run_logger


def _emit(value: Any, fmt: str, stream: TextIO, digits: int) -> None:
    from file_io import tabulate, write_csv, write_json, write_jsonl

    if fmt == "csv":
        fieldnames, rows = tabulate(value)
        write_csv(rows, stream, fieldnames, digits)
    elif fmt == "jsonl":
        write_jsonl(value if isinstance(value, list) else [value], stream, digits)
    else:
        write_json(value, stream, digits)


def _dispatch(args: argparse.Namespace, service: BracketService) -> tuple[Any, int]:
    """Run one subcommand; returns the result value and the exit code."""
    if args.command == "surface":
        if args.action == "info":
            return service.surface_info(), EXIT_OK
        certificate = service.certify(args.max_word_length)
        return certificate, EXIT_OK if certificate.passed else EXIT_FAILED
    if args.command == "bracket":
        if args.kind == "goldman":
            return service.goldman(args.x, args.y), EXIT_OK
        return service.twg(args.flavor, args.x, args.y), EXIT_OK
    if args.command == "intersect":
        return service.intersect(args.x, args.y), EXIT_OK
    if args.command == "poisson":
        return service.poisson(args.x, args.y, args.k), EXIT_OK
    if args.command == "uea":
        return service.uea_normal_form(args.word), EXIT_OK
    if args.command == "verify":
        reports = service.verify(args.claim, seed=args.seed, m_max=args.m_max)
        code = EXIT_OK if all(report.passed for report in reports) else EXIT_FAILED
        if args.format in ("csv", "jsonl"):
            return reports, code
        return {
            "surface": service.model.spec,
            "depth": service.engine.depth,
            "passed": code == EXIT_OK,
            "reports": reports,
        }, code
    if args.command == "annihilator-scan":
        m_max = args.m_max or service.verify_config.get("annihilator_m_max", 5)
        return service.annihilator_scan(args.beta, m_max), EXIT_OK
    raise DomainError(f"unknown command {args.command!r}")


def run(
    argv: Sequence[str] | None = None,
    stdout: TextIO | None = None,
    stderr: TextIO | None = None,
) -> int:
    """Parse argv, run the command, write results; returns the exit code."""
    from config import get_output_config

    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    run_logger = None
    try:
        args = build_parser().parse_args(argv)
        config = _load_config(args)
        output = get_output_config(config)
        fmt = args.format or output["format"]
        args.format = fmt
        run_logger = _setup_logging(args, config, stderr)
        service = BracketServiceFactory.create(args.surface, config, run_logger)
        if run_logger.path is not None:
            run_logger.run_header(service.model.spec, sys.argv[1:] if argv is None else argv)
        value, code = _dispatch(args, service)
        target = open(args.output, "w", encoding="utf-8") if args.output else nullcontext(stdout)
        with target as stream:
            _emit(value, fmt, stream, output["float_digits"])
        if args.output:
            print(f"Results saved to {args.output}", file=stderr)
        return code
    except UnstableEnumerationError as exc:
        print(f"Error: {exc}", file=stderr)
        return EXIT_UNSTABLE
    except DomainError as exc:
        print(f"Error: {exc}", file=stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"Error: {exc}", file=stderr)
        return EXIT_DOMAIN
    finally:
        if run_logger is not None:
            run_logger.close()


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
