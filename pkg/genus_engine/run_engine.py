#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Genus Engine - Command Line
Batch front end for invariants, genus bounds, the enumerator and the
example certificates. Data goes to stdout (or --output); logs and the
human summary go to stderr.
"""

import sys
import logging
import argparse
from pathlib import Path
from typing import List, Optional, Tuple

from rich.console import Console
from rich.table import Table

from . import config
from .bounds import bounds_for
from .build_reports import (
    OutputFormat,
    render_bounds,
    render_cases,
    render_classification,
    render_error,
    render_numerics,
    render_reports,
)
from .enumerator import (
    S2Mode,
    SearchSpec,
    SlopeCap,
    SlopeCapKind,
    discrepancy_report,
    enumerate_cases,
    ksq_genus_table,
    pgq1_spec,
)
from .exceptions import GenusEngineError, ParseError
from .invariants import SingularityIndices, numerics
from .ruled_surface import (
    FAMILY_ALIASES,
    ExampleFamily,
    build_example,
    min_L_dot_D,
    sweep_examples,
    verify_sharpness,
)
from .utils import parse_rational, safe_write_text, setup_logging

console = Console(stderr=True)

# ============================================================================
# Argument Parsing Helpers
# ============================================================================

def parse_int_range(text: str) -> Tuple[int, int]:
    """
    Parse "lo..hi" or a single integer.

    Example:
        "13..40" -> (13, 40)
    """
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        value = int(text)
        return value, value
    except ValueError as e:
        raise ParseError(f"Cannot parse integer range {text!r} (use lo..hi)") from e


def parse_slope_cap(text: Optional[str]) -> Optional[SlopeCap]:
    if text is None:
        return None
    if text in {kind.value for kind in SlopeCapKind if kind is not SlopeCapKind.CUSTOM}:
        return SlopeCap(SlopeCapKind(text))
    return SlopeCap(SlopeCapKind.CUSTOM, parse_rational(text))

# ============================================================================
# Commands
# ============================================================================

def cmd_invariants(args) -> Tuple[bool, str]:
    """Wraps invariants.numerics"""
    si = SingularityIndices.from_tokens(args.indices)
    record = numerics(si, args.b, require_parity=not args.no_parity)
    if not args.quiet:
        console.print(f"[green]✓ {si}: chi={record.chi} K^2={record.ksq} n={record.n}[/green]")
    return True, render_numerics(record, args.format, args.decimal)


def cmd_bound(args) -> Tuple[bool, str]:
    """Every applicable genus bound for the given data"""
    chi = parse_rational(args.chi)
    ksq = parse_rational(args.ksq) if args.ksq is not None else None
    lam = parse_rational(args.lam) if args.lam is not None else None
    bounds = bounds_for(chi, args.b, ksq=ksq, lam=lam, n=args.n)

    if not args.quiet:
        table = Table(title="Genus bounds")
        table.add_column("Source", style="cyan")
        table.add_column("Value", style="white")
        table.add_column("Floor", style="white")
        table.add_column("In domain", style="white")
        for bound in bounds:
            table.add_row(bound.source.value, str(bound.value), str(bound.floor_value),
                          "yes" if bound.in_domain else "no")
        console.print(table)
    return True, render_bounds(bounds, args.format, args.decimal)


def cmd_enumerate(args) -> Tuple[bool, str]:
    """Wraps enumerator.enumerate_cases; --table runs the p_g = q = 1 classification"""
    workers = args.workers
    if args.table:
        spec = pgq1_spec(args.g_ceiling, require_parity=args.parity)
        cases = enumerate_cases(spec, workers)
        table = ksq_genus_table(cases)
        report = discrepancy_report(cases, spec)
        if not args.quiet:
            status = "[green]✓ matches published table[/green]" if report.matches else \
                f"[yellow]! surplus {report.surplus} missing {report.missing}[/yellow]"
            console.print(status)
        ok = report.matches or not args.strict
        return ok, render_classification(table, report, args.format, args.decimal)

    if args.chi is None:
        raise ParseError("--chi is required unless --table is given")
    g_lo, g_hi = parse_int_range(args.g) if args.g else (2, args.g_ceiling)
    spec = SearchSpec(
        chi=parse_rational(args.chi),
        b=args.b,
        g_lo=g_lo,
        g_hi=g_hi,
        s2_mode=S2Mode(args.s2),
        slope_cap=parse_slope_cap(args.slope_cap),
        require_n_parity=not args.no_parity,
        ksq_range=parse_int_range(args.ksq_range) if args.ksq_range else None,
    )
    cases = enumerate_cases(spec, workers)

    if not args.quiet:
        table = Table(title=f"Feasible cases (chi={spec.chi}, b={spec.b})")
        table.add_column("K^2", style="cyan")
        table.add_column("g", style="white")
        table.add_column("Cases", style="white")
        counts = {}
        for case in cases:
            counts[(case.ksq, case.g)] = counts.get((case.ksq, case.g), 0) + 1
        for (ksq, g), count in sorted(counts.items(), key=lambda item: (-item[0][0], item[0][1])):
            table.add_row(str(ksq), str(g), str(count))
        console.print(table)
        console.print(f"[blue]{len(cases)} feasible case(s)[/blue]")
    return True, render_cases(cases, args.format, args.decimal)


def _example_params(args) -> dict:
    family = ExampleFamily(args.family)
    if family is ExampleFamily.LOW_SLOPE:
        if args.n is None or args.chi is None:
            raise ParseError("low-slope needs --n and --chi")
        return {"n": args.n, "chi": args.chi}
    if args.k is None:
        raise ParseError(f"{family.value} needs --k")
    params = {"k": args.k}
    if family is ExampleFamily.SPLIT_TORSION and args.m is not None:
        params["m"] = args.m
    return params


def cmd_examples(args) -> Tuple[bool, str]:
    """verify: one example certificate; sweep: every configured example"""
    if args.action == "verify":
        ex = build_example(ExampleFamily(args.family), **_example_params(args))
        report = verify_sharpness(ex)
        if args.ampleness:
            report.ampleness = min_L_dot_D(
                ex.surface, ex.ample,
                coeff_box=args.coeff_box, beta_box=args.beta_box,
                extended_box=args.extended_box, workers=args.workers,
            )
        reports = [report]
    else:
        cfg = config.load_config(args.config)
        reports = sweep_examples(cfg, workers=args.workers or cfg.get("workers"))

    ok = all(report.passed for report in reports)
    if not args.quiet:
        passed = sum(report.passed for report in reports)
        color = "green" if ok else "red"
        mark = "✓" if ok else "✗"
        console.print(f"[{color}]{mark} {passed}/{len(reports)} certificate(s) passed[/{color}]")
    return ok, render_reports(reports, args.format, args.decimal)

# ============================================================================
# CLI Interface
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=[fmt.value for fmt in OutputFormat],
                        default=OutputFormat.JSON.value, help="Output format (default: json)")
    common.add_argument("--output", type=str, default=None, help="Write data to this file instead of stdout (relative to reports/)")
    common.add_argument("--decimal", action="store_true",
                        help="Add display-only decimal approximations (non-authoritative)")
    common.add_argument("--workers", type=int, default=None,
                        help=f"Worker processes (default: GENUS_ENGINE_WORKERS={config.WORKERS})")
    common.add_argument("--debug", action="store_true", help="Enable debug logging")
    common.add_argument("--quiet", action="store_true", help="Suppress console summary and log output")
    common.add_argument("--log-file", type=str, default=None, help="Also log to this rotating file (relative to logs/)")

    parser = argparse.ArgumentParser(
        prog="genus-engine",
        description="Genus Engine - exact invariants and genus bounds for hyperelliptic fibrations",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python -m genus_engine invariants g=7 s2=30 s6=1 --b 1
  python -m genus_engine bound --chi 1 --b 1
  python -m genus_engine enumerate --chi 1 --b 1 --g 13..40
  python -m genus_engine enumerate --table --format markdown
  python -m genus_engine examples verify split-torsion --k 3 --m 5
  python -m genus_engine examples sweep --config sweep_config.yaml
        """,
    )
    subparsers = parser.add_subparsers(dest="command", required=True, help="Available commands")

    # Invariants command
    inv = subparsers.add_parser("invariants", parents=[common], help="Invariants from singularity indices")
    inv.add_argument("indices", nargs="+", help="Index tokens, e.g. g=7 s2=30 s6=1")
    inv.add_argument("--b", type=int, default=1, help="Base genus (default: 1)")
    inv.add_argument("--no-parity", action="store_true", help="Accept odd n for odd g")
    inv.set_defaults(handler=cmd_invariants)

    # Bound command
    bnd = subparsers.add_parser("bound", parents=[common], help="Evaluate genus bounds")
    bnd.add_argument("--chi", required=True, help="chi_f (p or p/q)")
    bnd.add_argument("--b", type=int, required=True, help="Base genus")
    bnd.add_argument("--ksq", default=None, help="K_f^2 (p or p/q)")
    bnd.add_argument("--lambda", dest="lam", default=None, help="Slope (p or p/q)")
    bnd.add_argument("--n", type=int, default=None, help="Branch invariant n")
    bnd.set_defaults(handler=cmd_bound)

    # Enumerate command
    enum = subparsers.add_parser("enumerate", parents=[common], help="Enumerate feasible index vectors")
    enum.add_argument("--chi", default=None, help="chi_f (p or p/q)")
    enum.add_argument("--b", type=int, default=1, help="Base genus (default: 1)")
    enum.add_argument("--g", default=None, help="Genus range lo..hi (default: 2..ceiling)")
    enum.add_argument("--g-ceiling", type=int, default=config.DEFAULT_G_CEILING, help="Genus ceiling")
    enum.add_argument("--s2", choices=[mode.value for mode in S2Mode], default=S2Mode.ANY.value,
                      help="Sign branch for s_2 (default: any)")
    enum.add_argument("--slope-cap", default=None,
                      help="miyaoka_yau, hyperelliptic or a rational value")
    enum.add_argument("--no-parity", action="store_true", help="Drop the even-n requirement for odd g")
    enum.add_argument("--ksq-range", default=None, help="K^2 range lo..hi")
    enum.add_argument("--table", action="store_true", help="p_g = q = 1 classification table")
    enum.add_argument("--parity", action="store_true", help="With --table: require even n for odd g")
    enum.add_argument("--strict", action="store_true", help="With --table: fail on any discrepancy")
    enum.set_defaults(handler=cmd_enumerate)

    # Examples command
    exm = subparsers.add_parser("examples", help="Build and certify sharp examples")
    actions = exm.add_subparsers(dest="action", required=True)
    verify = actions.add_parser("verify", parents=[common], help="Certify one example")
    verify.add_argument("family", choices=[family.value for family in ExampleFamily] + list(FAMILY_ALIASES))
    verify.add_argument("--k", type=int, default=None)
    verify.add_argument("--m", type=int, default=None, help="Torsion order (default: k+2)")
    verify.add_argument("--n", type=int, default=None)
    verify.add_argument("--chi", type=int, default=None)
    verify.add_argument("--ampleness", action="store_true", help="Also scan L.D over candidate curves")
    verify.add_argument("--coeff-box", type=int, default=config.DIVISOR_COEFF_BOX)
    verify.add_argument("--beta-box", type=int, default=config.DIVISOR_BETA_BOX)
    verify.add_argument("--extended-box", type=int, default=config.DIVISOR_EXTENDED_BOX)
    verify.set_defaults(handler=cmd_examples)
    sweep = actions.add_parser("sweep", parents=[common], help="Certify every configured example")
    sweep.add_argument("--config", "-c", default=str(config.SWEEP_CONFIG_FILE), help="Sweep YAML file")
    sweep.set_defaults(handler=cmd_examples)

    return parser


def resolve_path(path: Optional[str], directory: Path) -> Optional[Path]:
    """Relative paths land under directory; absolute paths are kept"""
    if path is None:
        return None
    path = Path(path)
    return path if path.is_absolute() else directory / path


def emit(text: str, output: Optional[str]) -> bool:
    if output:
        return safe_write_text(resolve_path(output, config.REPORTS_DIR), text)
    sys.stdout.write(text)
    sys.stdout.flush()
    return True


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main CLI entry point.

    Returns:
        0 when every requested check passes, 1 on a reported error or failed
        check, 3 on an unexpected failure, 130 when interrupted
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    level = logging.DEBUG if args.debug else getattr(logging, config.LOG_LEVEL, logging.INFO)
    if args.quiet and not args.debug:
        level = logging.WARNING
    config.ensure_directories()
    setup_logging(resolve_path(args.log_file, config.LOGS_DIR), level, quiet=args.quiet)

    try:
        ok, text = args.handler(args)
        if not emit(text, args.output):
            return 1
        return 0 if ok else 1
    except GenusEngineError as e:
        logging.error(f"{args.command} failed: {e}")
        emit(render_error(e), None)
        return 1
    except KeyboardInterrupt:
        console.print("\n[yellow]Operation cancelled by user[/yellow]")
        return 130
    except Exception as e:
        logging.error(f"Unexpected failure in {args.command}: {e}", exc_info=True)
        emit(render_error(e, code="internal_error"), None)
        return 3


if __name__ == "__main__":
    sys.exit(main())
