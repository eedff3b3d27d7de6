"""
Local Configuration Example - Site-Specific Settings
====================================================
Copy this file to local_config.py and customize for your machine.
local_config.py is gitignored and will not be committed.

Every name is optional; anything left out keeps the built-in default.
Command-line flags still win over these values.
"""

# =============================================================================
# SEARCH BOUNDS
# =============================================================================
# Coordinate bound of the polarization search is SEARCH_BOUND_FACTOR * D
SEARCH_BOUND_FACTOR = 8

# Height bound for `hm FAMILY --points` without a value
DEFAULT_HEIGHT_BOUND = 50

# Coordinate box for order-level twist search and for isogeny witnesses
DEFAULT_TWIST_BOUND = 4
DEFAULT_WITNESS_BOUND = 2

# =============================================================================
# EXECUTION AND OUTPUT
# =============================================================================
# Worker processes for `tabulate` and `verify`
PARALLEL_WORKERS = 4

# One of "json", "csv", "text", "xlsx"
OUTPUT_FORMAT = "json"

# Maximal-order catalog (IGUSA_LOCUS_CATALOG overrides this)
# CATALOG_PATH = "/path/to/order_catalog.json"
