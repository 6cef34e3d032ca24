#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Genus Engine - Report Builder
Renders invariants, bounds, enumeration results and example certificates
as JSON, TSV or markdown. Output is deterministic: no timestamps, sorted
keys, stable row order.
"""

import logging
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence

from .bounds import GenusBound
from .enumerator import DiscrepancyReport, FeasibleCase
from .invariants import FibrationNumerics
from .ruled_surface import SharpnessReport, certificate_text
from .utils import decimal_display, dumps, format_rational

logger = logging.getLogger(__name__)


class OutputFormat(str, Enum):
    JSON = "json"
    TSV = "tsv"
    MARKDOWN = "markdown"

# ============================================================================
# Generic Rendering
# ============================================================================

def _cell(value: Any, decimal: bool) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (int, Fraction)):
        text = format_rational(value)
        if decimal and isinstance(value, Fraction) and value.denominator != 1:
            text += f" (~{decimal_display(value)})"
        return text
    if isinstance(value, (list, tuple)):
        return ",".join(_cell(item, decimal) for item in value)
    return str(value)


def rows_to_tsv(columns: Sequence[str], rows: Iterable[Mapping[str, Any]], decimal: bool = False) -> str:
    lines = ["\t".join(columns)]
    for row in rows:
        lines.append("\t".join(_cell(row.get(column), decimal) for column in columns))
    return "\n".join(lines) + "\n"


def rows_to_markdown(columns: Sequence[str], rows: Iterable[Mapping[str, Any]], decimal: bool = False) -> str:
    lines = [
        "| " + " | ".join(columns) + " |",
        "|" + "|".join("---" for _ in columns) + "|",
    ]
    for row in rows:
        lines.append("| " + " | ".join(_cell(row.get(column), decimal) for column in columns) + " |")
    return "\n".join(lines) + "\n"


def render_rows(
    fmt: OutputFormat,
    columns: Sequence[str],
    rows: List[Mapping[str, Any]],
    payload: Any,
    decimal: bool = False,
) -> str:
    """Tabular formats use columns/rows; JSON serializes the full payload"""
    fmt = OutputFormat(fmt)
    if fmt is OutputFormat.JSON:
        return dumps(payload, decimal=decimal, indent=2) + "\n"
    if fmt is OutputFormat.TSV:
        return rows_to_tsv(columns, rows, decimal)
    return rows_to_markdown(columns, rows, decimal)

# ============================================================================
# Per-Command Builders
# ============================================================================

NUMERICS_COLUMNS = ["g", "b", "n", "chi", "ksq", "e", "lambda"]


def render_numerics(record: FibrationNumerics, fmt: OutputFormat, decimal: bool = False) -> str:
    row = record.to_dict()
    return render_rows(fmt, NUMERICS_COLUMNS, [row], record, decimal)


BOUND_COLUMNS = ["source", "value", "floor", "in_domain", "note"]


def render_bounds(bounds: Sequence[GenusBound], fmt: OutputFormat, decimal: bool = False) -> str:
    rows = [bound.to_dict() for bound in bounds]
    return render_rows(fmt, BOUND_COLUMNS, rows, {"bounds": list(bounds)}, decimal)


CASE_COLUMNS = ["g", "ksq", "n", "branch", "indices"]


def render_cases(cases: Sequence[FeasibleCase], fmt: OutputFormat, decimal: bool = False) -> str:
    """JSON: one case per line followed by a summary line; others: a table"""
    fmt = OutputFormat(fmt)
    if fmt is OutputFormat.JSON:
        lines = [dumps(case, decimal=decimal) for case in cases]
        lines.append(dumps({"summary": {"count": len(cases), "pairs": _pairs(cases)}}))
        return "\n".join(lines) + "\n"
    rows = [
        {"g": c.g, "ksq": c.ksq, "n": c.n, "branch": c.branch.value, "indices": str(c.indices)}
        for c in cases
    ]
    footer = f"\ncount: {len(cases)}\n" if fmt is OutputFormat.MARKDOWN else ""
    return render_rows(fmt, CASE_COLUMNS, rows, None, decimal) + footer


def _pairs(cases: Sequence[FeasibleCase]) -> List[List[int]]:
    return [list(pair) for pair in sorted({(c.ksq, c.g) for c in cases}, key=lambda p: (-p[0], p[1]))]


def render_classification(
    table: Dict[int, Sequence[int]],
    report: DiscrepancyReport,
    fmt: OutputFormat,
    decimal: bool = False,
) -> str:
    fmt = OutputFormat(fmt)
    if fmt is OutputFormat.JSON:
        payload = {
            "table": {str(ksq): list(genera) for ksq, genera in table.items()},
            "discrepancy": report,
        }
        return dumps(payload, decimal=decimal, indent=2) + "\n"
    rows = [{"ksq": ksq, "g": list(genera)} for ksq, genera in table.items()]
    text = render_rows(fmt, ["ksq", "g"], rows, None, decimal)
    disc_rows = [
        {"kind": "surplus", "ksq": ksq, "g": g,
         "witnesses": "; ".join(str(c.indices) for c in report.witnesses[(ksq, g)])}
        for ksq, g in report.surplus
    ] + [{"kind": "missing", "ksq": ksq, "g": g, "witnesses": ""} for ksq, g in report.missing]
    if disc_rows:
        if fmt is OutputFormat.MARKDOWN:
            text += "\nDiscrepancies against the published table:\n\n"
        text += render_rows(fmt, ["kind", "ksq", "g", "witnesses"], disc_rows, None, decimal)
    elif fmt is OutputFormat.MARKDOWN:
        text += "\nMatches the published table.\n"
    return text


REPORT_COLUMNS = ["family", "params", "g", "chi", "ksq", "n", "min_LD", "passed"]


def render_reports(reports: Sequence[SharpnessReport], fmt: OutputFormat, decimal: bool = False) -> str:
    """Aggregate table; markdown appends one certificate block per report"""
    fmt = OutputFormat(fmt)
    rows = []
    for report in reports:
        ex = report.example
        rows.append({
            "family": ex.family.value,
            "params": " ".join(f"{key}={value}" for key, value in sorted(ex.params.items())),
            "g": ex.g,
            "chi": ex.numerics.chi,
            "ksq": ex.numerics.ksq,
            "n": ex.n,
            "min_LD": report.ampleness.min_value if report.ampleness else None,
            "passed": report.passed,
        })
    text = render_rows(fmt, REPORT_COLUMNS, rows, {"reports": list(reports)}, decimal)
    if fmt is OutputFormat.MARKDOWN:
        blocks = ["```\n" + certificate_text(report) + "\n```" for report in reports]
        text += "\n" + "\n\n".join(blocks) + "\n"
    return text


def render_error(error: Exception, code: Optional[str] = None) -> str:
    """Machine-readable error document"""
    payload = error.to_dict() if hasattr(error, "to_dict") else {"code": code or "error", "message": str(error)}
    return dumps({"error": payload}) + "\n"
