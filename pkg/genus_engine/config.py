#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Genus Engine Configuration
Central configuration for search boxes, sweeps, paths and logging
"""

import os
import copy
import logging
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from .exceptions import ConfigError

logger = logging.getLogger(__name__)

# ============================================================================
# Paths
# ============================================================================

# Base directory (parent of genus_engine)
BASE_DIR = Path(__file__).parent.parent

# Relative --log-file paths land here (override with GENUS_ENGINE_LOG_DIR)
LOGS_DIR = Path(os.getenv("GENUS_ENGINE_LOG_DIR", BASE_DIR / "logs"))

# Relative --output paths land here
REPORTS_DIR = BASE_DIR / "reports"

# Default sweep configuration file
SWEEP_CONFIG_FILE = BASE_DIR / "sweep_config.yaml"

# ============================================================================
# Parallelism
# ============================================================================

# 1 = serial; anything larger uses a process pool
WORKERS = int(os.getenv("GENUS_ENGINE_WORKERS", "1"))

# ============================================================================
# Enumerator Settings
# ============================================================================

# Genus ceiling for the p_g = q = 1 search; the quadratic bound makes g >= 18 empty
DEFAULT_G_CEILING = 60

# Largest genus accepted anywhere (index vectors are stored densely)
MAX_GENUS = int(os.getenv("GENUS_ENGINE_MAX_GENUS", "10000"))

# Smallest self-intersection -m admitted for the rational curve in the s_2 < 0 branch
NEGATIVE_BRANCH_MINUS_CURVE = 2

# Published (K^2, g) table for p_g = q = 1
PGQ1_TABLE = {
    9: (4, 6, 8, 10),
    8: (3, 4, 5, 6, 7, 8, 10, 11, 14),
    7: (3, 4, 5, 6),
    6: (2, 3, 4, 5, 6, 7, 8),
    5: (2, 3, 4),
    4: (2, 3, 4),
    3: (2,),
    2: (2,),
}

# ============================================================================
# Ruled Surface Settings
# ============================================================================

# Coefficient box |a|, |b| for the ampleness scan
DIVISOR_COEFF_BOX = 60

# Largest exceptional multiplicity beta considered
DIVISOR_BETA_BOX = 60

# Second pass over (a, b) only, beta taken at its admissible extremes
DIVISOR_EXTENDED_BOX = 600

# ============================================================================
# Logging
# ============================================================================

LOG_LEVEL = os.getenv("GENUS_ENGINE_LOG_LEVEL", "INFO")  # DEBUG, INFO, WARNING, ERROR
LOG_MAX_BYTES = 10 * 1024 * 1024  # 10MB
LOG_BACKUP_COUNT = 5

# ============================================================================
# Sweep Configuration (YAML)
# ============================================================================

def get_default_config() -> Dict[str, Any]:
    """Default sweep configuration, mirrored by sweep_config.yaml"""
    return {
        "examples": {
            "split-torsion": {"k": [3, 5, 7, 9, 11], "m": None},
            "indecomposable": {"k": [1, 3, 5, 7]},
            "low-slope": {"chi_min": 6, "chi_max": 20},
        },
        "ampleness": {
            "enabled": True,
            "coeff_box": DIVISOR_COEFF_BOX,
            "beta_box": DIVISOR_BETA_BOX,
            "extended_box": DIVISOR_EXTENDED_BOX,
            "claims": [
                {"family": "split-torsion", "k": 3, "m": 5},
                {"family": "indecomposable", "k": 1},
                {"family": "indecomposable", "k": 3},
                {"family": "low-slope", "n": 1, "chi": 6},
                {"family": "low-slope", "n": 2, "chi": 8},
                {"family": "low-slope", "n": 4, "chi": 9},
            ],
        },
        "workers": WORKERS,
    }


def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(config_file: Optional[Path] = None) -> Dict[str, Any]:
    """
    Load the sweep configuration from YAML, merged over the defaults.

    A missing file falls back to the defaults with a warning; a file that
    exists but does not parse to a mapping raises ConfigError.

    Args:
        config_file: YAML path (defaults to SWEEP_CONFIG_FILE)

    Returns:
        Configuration dictionary
    """
    path = Path(config_file) if config_file else SWEEP_CONFIG_FILE
    defaults = get_default_config()

    if not path.exists():
        logger.warning(f"Config file {path} not found, using defaults")
        return defaults

    try:
        with open(path, "r", encoding="utf-8") as f:
            loaded = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"Could not parse {path}: {e}") from e

    if not isinstance(loaded, dict):
        raise ConfigError(f"{path} must contain a mapping at top level")

    logger.debug(f"Loaded config from {path}")
    return _deep_merge(defaults, loaded)

# ============================================================================
# Create directories if they don't exist
# ============================================================================

def ensure_directories():
    """Create necessary directories if they don't exist"""
    for directory in [LOGS_DIR, REPORTS_DIR]:
        directory.mkdir(parents=True, exist_ok=True)

# ============================================================================
# Validation
# ============================================================================

if __name__ == "__main__":
    print("Genus Engine Configuration")
    print("=" * 60)
    print(f"Base Directory: {BASE_DIR}")
    print(f"Logs Directory: {LOGS_DIR}")
    print(f"Reports Directory: {REPORTS_DIR}")
    print(f"Sweep Config: {SWEEP_CONFIG_FILE}")
    print()
    print(f"Workers: {WORKERS}")
    print(f"Genus ceiling: {DEFAULT_G_CEILING}")
    print(f"Divisor boxes: {DIVISOR_COEFF_BOX} / beta {DIVISOR_BETA_BOX} / extended {DIVISOR_EXTENDED_BOX}")
    print()

    ensure_directories()
    print("All directories created successfully")
