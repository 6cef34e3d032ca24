#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Genus Engine Utilities
Helper functions for logging, exact rational I/O and JSON serialization
"""

import re
import sys
import json
import logging
from enum import Enum
from fractions import Fraction
from pathlib import Path
from dataclasses import is_dataclass, fields
from logging.handlers import RotatingFileHandler
from typing import Any, Optional, Union

from .exceptions import ParseError

Rational = Union[int, Fraction]

# ============================================================================
# Logging Setup
# ============================================================================

def setup_logging(log_file: Optional[Union[str, Path]] = None, level=logging.INFO, quiet: bool = False):
    """
    Configure logging to a rotating file and to the console.

    The console handler writes to stderr so stdout only carries data.

    Args:
        log_file: Log file path (None = console only)
        level: Logging level
        quiet: Suppress console output (log file only)
    """
    from .config import LOG_MAX_BYTES, LOG_BACKUP_COUNT

    root = logging.getLogger()
    root.setLevel(level)
    root.handlers.clear()

    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(
            log_path,
            maxBytes=LOG_MAX_BYTES,
            backupCount=LOG_BACKUP_COUNT,
        )
        file_handler.setFormatter(logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        ))
        root.addHandler(file_handler)

    if not quiet:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(logging.Formatter('%(levelname)s: %(message)s'))
        root.addHandler(console_handler)

    logging.debug(f"Logging initialized: {log_file}")

# ============================================================================
# Exact Rationals
# ============================================================================

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """
    Parse "p", "p/q" or an int into an exact Fraction.

    Decimal strings are rejected on purpose: every input is exact.

    Example:
        "71/4" -> Fraction(71, 4)
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    match = _RATIONAL_RE.match(str(text))
    if not match:
        raise ParseError(f"Not an exact rational: {text!r} (use p or p/q)")
    num, den = match.group(1), match.group(2)
    if den is not None and int(den) == 0:
        raise ParseError(f"Zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(value: Rational) -> str:
    """Render as "p" or "p/q" (lowest terms)"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def floor_rational(value: Rational) -> int:
    value = Fraction(value)
    return value.numerator // value.denominator


def decimal_display(value: Rational, places: int = 6) -> str:
    """Display-only approximation; never fed back into a computation"""
    value = Fraction(value)
    scaled = round(value * 10 ** places)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    whole, frac = divmod(scaled, 10 ** places)
    return f"{sign}{whole}.{frac:0{places}d}"

# ============================================================================
# JSON Serialization
# ============================================================================

def to_jsonable(obj: Any, decimal: bool = False) -> Any:
    """
    Convert dataclasses, enums, Fractions and containers to JSON-ready data.

    Fractions become "p/q" strings; with decimal=True every rational field
    gets a sibling "<name>_decimal" string for display.
    """
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Enum):
        return obj.value
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict(), decimal)
    if is_dataclass(obj):
        return to_jsonable({f.name: getattr(obj, f.name) for f in fields(obj)}, decimal)
    if isinstance(obj, dict):
        out = {}
        for key, value in obj.items():
            out[str(key)] = to_jsonable(value, decimal)
            if decimal and isinstance(value, Fraction):
                out[f"{key}_decimal"] = decimal_display(value)
        return out
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(item, decimal) for item in items]
    raise TypeError(f"Cannot serialize {type(obj).__name__}")


def dumps(obj: Any, decimal: bool = False, indent: Optional[int] = None) -> str:
    """Deterministic JSON text (sorted keys, no floats)"""
    return json.dumps(to_jsonable(obj, decimal), sort_keys=True, indent=indent, ensure_ascii=False)


def safe_write_text(file_path: Union[str, Path], text: str) -> bool:
    """
    Safely write text to file with error handling.

    Args:
        file_path: Destination path
        text: Content

    Returns:
        True if successful, False otherwise
    """
    try:
        path = Path(file_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as f:
            f.write(text)
        logging.debug(f"Wrote {len(text)} chars to {file_path}")
        return True
    except OSError as e:
        logging.error(f"Failed to write {file_path}: {e}")
        return False

# ============================================================================
# Testing
# ============================================================================

if __name__ == "__main__":
    print("Testing Genus Engine Utilities")
    print("=" * 60)

    assert parse_rational("71/4") == Fraction(71, 4)
    assert parse_rational("-3") == -3
    print("✓ parse_rational works")

    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(Fraction(-16, 13)) == "-16/13"
    print("✓ format_rational works")

    assert floor_rational(Fraction(71, 4)) == 17
    assert floor_rational(Fraction(-1, 2)) == -1
    print("✓ floor_rational works")

    assert dumps({"b": Fraction(1, 2), "a": [1, 2]}) == '{"a": [1, 2], "b": "1/2"}'
    print("✓ dumps works")

    print("\nAll utilities tests passed!")
