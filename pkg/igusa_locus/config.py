"""
Configuration settings for igusa-locus.

This module contains the default search bounds, output settings and catalog
location. Site-specific overrides are loaded from local_config.py (if present),
the catalog path can also come from the environment, and command-line flags
win over both.
"""

import os
import sys
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional

from .errors import ConfigError


class OutputFormat(Enum):
    """Output formats for reports."""
    JSON = "json"
    CSV = "csv"
    TEXT = "text"
    XLSX = "xlsx"


# =============================================================================
# DEFAULT SETTINGS (can be overridden by local_config.py)
# =============================================================================

# Coordinate bound for the polarization search is SEARCH_BOUND_FACTOR * D
SEARCH_BOUND_FACTOR = 8

DEFAULT_HEIGHT_BOUND = 50
DEFAULT_TWIST_BOUND = 4
DEFAULT_WITNESS_BOUND = 2

# Number of worker processes for tabulation and verification
PARALLEL_WORKERS = 4

DEFAULT_OUTPUT_FORMAT = OutputFormat.JSON

DEFAULT_CATALOG_PATH = Path(__file__).parent / "data" / "order_catalog.json"
CATALOG_ENV_VAR = "IGUSA_LOCUS_CATALOG"

# Application metadata
APP_NAME = "igusa-locus"
APP_FULL_NAME = "Quaternionic locus calculator"
APP_VERSION = "1.0.0"


@dataclass
class Config:
    """Effective settings for one run."""
    search_bound: Optional[int] = None
    catalog_path: Path = DEFAULT_CATALOG_PATH
    output_format: OutputFormat = DEFAULT_OUTPUT_FORMAT
    height_bound: int = DEFAULT_HEIGHT_BOUND
    jobs: int = PARALLEL_WORKERS
    twist_bound: int = DEFAULT_TWIST_BOUND
    witness_bound: int = DEFAULT_WITNESS_BOUND

    def __post_init__(self):
        self.catalog_path = Path(self.catalog_path)
        if isinstance(self.output_format, str):
            try:
                self.output_format = OutputFormat(self.output_format)
            except ValueError:
                raise ConfigError(f"Unknown output format {self.output_format!r}")
        for name in ("height_bound", "jobs", "twist_bound"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")
        if self.witness_bound < 0:
            raise ConfigError(f"witness_bound must be >= 0, got {self.witness_bound}")
        if self.search_bound is not None and self.search_bound < 1:
            raise ConfigError(f"search_bound must be positive, got {self.search_bound}")

    def bound_for(self, D: int) -> int:
        """Coordinate bound of the polarization search for discriminant D."""
        return self.search_bound if self.search_bound is not None else SEARCH_BOUND_FACTOR * D


def get_active_config(**overrides) -> Config:
    """Build the effective configuration.

    Precedence: explicit overrides (command-line flags) > IGUSA_LOCUS_CATALOG
    for the catalog path > local_config.py > defaults. Overrides equal to None
    are ignored.
    """
    settings = {
        "catalog_path": os.environ.get(CATALOG_ENV_VAR) or DEFAULT_CATALOG_PATH,
        "output_format": DEFAULT_OUTPUT_FORMAT,
        "height_bound": DEFAULT_HEIGHT_BOUND,
        "jobs": PARALLEL_WORKERS,
        "twist_bound": DEFAULT_TWIST_BOUND,
        "witness_bound": DEFAULT_WITNESS_BOUND,
    }
    settings.update({key: value for key, value in overrides.items() if value is not None})
    return Config(**settings)


# =============================================================================
# LOAD LOCAL CONFIG (if present)
# =============================================================================
def _load_local_config():
    """Load site-specific settings from local_config.py if it exists."""
    global SEARCH_BOUND_FACTOR, DEFAULT_HEIGHT_BOUND, DEFAULT_TWIST_BOUND
    global DEFAULT_WITNESS_BOUND, PARALLEL_WORKERS, DEFAULT_CATALOG_PATH, DEFAULT_OUTPUT_FORMAT

    # Add parent directory to path to find local_config
    parent_dir = Path(__file__).parent.parent
    sys.path.insert(0, str(parent_dir))

    try:
        import local_config

        if hasattr(local_config, 'SEARCH_BOUND_FACTOR'):
            SEARCH_BOUND_FACTOR = local_config.SEARCH_BOUND_FACTOR
        if hasattr(local_config, 'DEFAULT_HEIGHT_BOUND'):
            DEFAULT_HEIGHT_BOUND = local_config.DEFAULT_HEIGHT_BOUND
        if hasattr(local_config, 'DEFAULT_TWIST_BOUND'):
            DEFAULT_TWIST_BOUND = local_config.DEFAULT_TWIST_BOUND
        if hasattr(local_config, 'DEFAULT_WITNESS_BOUND'):
            DEFAULT_WITNESS_BOUND = local_config.DEFAULT_WITNESS_BOUND
        if hasattr(local_config, 'PARALLEL_WORKERS'):
            PARALLEL_WORKERS = local_config.PARALLEL_WORKERS
        if hasattr(local_config, 'CATALOG_PATH'):
            DEFAULT_CATALOG_PATH = Path(local_config.CATALOG_PATH)
        if hasattr(local_config, 'OUTPUT_FORMAT'):
            DEFAULT_OUTPUT_FORMAT = OutputFormat(local_config.OUTPUT_FORMAT)

    except ImportError:
        # local_config.py doesn't exist, use defaults
        pass
    finally:
        # Remove from path
        if str(parent_dir) in sys.path:
            sys.path.remove(str(parent_dir))


# Load local config on module import
_load_local_config()
