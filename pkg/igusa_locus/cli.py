"""
Command-Line Interface.

Subcommands analyze, tabulate, polarize, hm and verify. Exit codes: 0 ok,
1 failed verification or internal inconsistency, 2 bad input, 3 I/O or
catalog problems, 4 a witness search ran out.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from .config import APP_FULL_NAME, APP_NAME, APP_VERSION, Config, ConfigError, OutputFormat, get_active_config
from .errors import CatalogError, ConsistencyError, DomainError, SearchExhausted
from .hm_families import FAMILIES, curve, rational_points
from .locus import DiscD, analyze
from .output import (
    curve_to_dict,
    point_to_dict,
    polarization_to_dict,
    render,
    render_tabulation,
    report_to_dict,
    reports_frame,
    write_tabulation,
)
from .polarization import polarization_data
from .processing import tabulate
from .quaternion import OrderCatalog, find_mu, maximal_order
from .verification import LEVELS, run_verification

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_BAD_INPUT = 2
EXIT_IO = 3
EXIT_SEARCH_EXHAUSTED = 4

# --points given without a value
_CONFIG_HEIGHT = -1


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _single_format(config: Config, command: str) -> OutputFormat:
    if config.output_format in (OutputFormat.JSON, OutputFormat.TEXT):
        return config.output_format
    raise DomainError(f"{config.output_format.value} output is not available for {command}")


# =============================================================================
# COMMANDS
# =============================================================================

def cmd_analyze(D: int, config: Config, out: Optional[Path] = None, witnesses: bool = False) -> int:
    catalog = OrderCatalog.load(config.catalog_path) if witnesses else None
    report = analyze(D, catalog=catalog, witnesses=witnesses,
                     search_bound=config.bound_for(D), twist_bound=config.twist_bound)
    if config.output_format == OutputFormat.CSV:
        _emit(reports_frame([report]).to_csv(index=False), out)
    else:
        _emit(render(report_to_dict(report), _single_format(config, "analyze")), out)
    return EXIT_OK


def cmd_tabulate(d_min: int, d_max: int, config: Config, out: Optional[Path] = None) -> int:
    reports = tabulate(d_min, d_max, jobs=config.jobs)
    if out is not None:
        write_tabulation(reports, config.output_format, out)
    elif config.output_format == OutputFormat.XLSX:
        raise DomainError("xlsx output needs --out")
    else:
        _emit(render_tabulation(reports, config.output_format), None)
    return EXIT_OK


def cmd_polarize(D: int, config: Config, out: Optional[Path] = None) -> int:
    fmt = _single_format(config, "polarize")
    DiscD.of(D)
    catalog = OrderCatalog.load(config.catalog_path)
    order = maximal_order(D, catalog)
    bound = config.bound_for(D)
    mu = find_mu(order, D, bound)
    if mu is None:
        raise SearchExhausted(f"No principal mu for D={D} within coordinate bound {bound}; raise --bound")
    data = polarization_data(order, mu, config.twist_bound, config.witness_bound)
    _emit(render(polarization_to_dict(data), fmt), out)
    return EXIT_OK


def cmd_hm(family: int, t: Optional[str], s: Optional[str], points: Optional[int],
           config: Config, out: Optional[Path] = None) -> int:
    fmt = _single_format(config, "hm")
    if points is not None:
        payload = [point_to_dict(family, p) for p in rational_points(family, points)]
    else:
        if t is None or s is None:
            raise DomainError("hm needs T and S, or --points")
        payload = curve_to_dict(curve(family, t, s))
    _emit(render(payload, fmt), out)
    return EXIT_OK


def cmd_verify(level: str, config: Config, out: Optional[Path] = None) -> int:
    catalog = OrderCatalog.load(config.catalog_path)
    result = run_verification(level, catalog, jobs=config.jobs)
    lines = []
    for suite in result.suites:
        status = "PASS" if suite.passed else "FAIL"
        lines.append(f"{status} {suite.name}: {suite.checked} checked, {len(suite.failures)} failure(s)")
        lines.extend(f"    {failure}" for failure in suite.failures[:20])
    lines.append(f"{'PASSED' if result.passed else 'FAILED'} ({result.level})")
    _emit("\n".join(lines) + "\n", out)
    return EXIT_OK if result.passed else EXIT_FAILURE


# =============================================================================
# ARGUMENT PARSING
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, default=None,
                        help="coordinate bound of the polarization search (default 8*D)")
    common.add_argument("--catalog", type=Path, default=None,
                        help="order catalog JSON (default: packaged catalog, or $IGUSA_LOCUS_CATALOG)")
    common.add_argument("--format", dest="output_format", default=None,
                        choices=[f.value for f in OutputFormat], help="output format")
    common.add_argument("--out", type=Path, default=None, help="write output to this file")
    common.add_argument("--jobs", type=int, default=None, help="worker processes")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging")

    parser = argparse.ArgumentParser(
        prog=APP_NAME,
        description=f"{APP_FULL_NAME}: quaternionic loci in the moduli of abelian surfaces",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"{APP_NAME} {APP_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="report for one discriminant")
    p.add_argument("D", type=int)
    p.add_argument("--witnesses", action="store_true", help="attach mu and order-level twists")

    p = sub.add_parser("tabulate", parents=[common], help="reports for a range of discriminants")
    p.add_argument("min", type=int)
    p.add_argument("max", type=int)

    p = sub.add_parser("polarize", parents=[common], help="maximal order, mu, Riemann form and twists")
    p.add_argument("D", type=int)

    p = sub.add_parser("hm", parents=[common], help="genus-2 curve of a family at (t, s), or its points")
    p.add_argument("family", type=int, choices=FAMILIES)
    p.add_argument("t", nargs="?", default=None)
    p.add_argument("s", nargs="?", default=None)
    p.add_argument("--points", type=int, nargs="?", const=_CONFIG_HEIGHT, default=None, metavar="H",
                   help="list base-curve points of height <= H (default height from config)")

    p = sub.add_parser("verify", parents=[common], help="run the consistency suites")
    p.add_argument("level", nargs="?", default="quick", choices=sorted(LEVELS))
    return parser


def _configure_logging(verbose: bool, command: str) -> None:
    if verbose:
        level = logging.DEBUG
    elif command in ("tabulate", "verify"):
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    """Main application entry point."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_BAD_INPUT
    _configure_logging(args.verbose, args.command)

    try:
        config = get_active_config(
            search_bound=args.bound,
            catalog_path=args.catalog,
            output_format=args.output_format,
            jobs=args.jobs,
        )
        if args.command == "analyze":
            return cmd_analyze(args.D, config, args.out, args.witnesses)
        if args.command == "tabulate":
            return cmd_tabulate(args.min, args.max, config, args.out)
        if args.command == "polarize":
            return cmd_polarize(args.D, config, args.out)
        if args.command == "hm":
            points = config.height_bound if args.points == _CONFIG_HEIGHT else args.points
            return cmd_hm(args.family, args.t, args.s, points, config, args.out)
        return cmd_verify(args.level, config, args.out)
    except (DomainError, ConfigError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (CatalogError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except SearchExhausted as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SEARCH_EXHAUSTED
    except ConsistencyError as e:
        logger.error("Internal consistency failure: %s", e)
        return EXIT_FAILURE
