"""
Command-line constants: document schema and the exit-code table.
"""

SCHEMA_VERSION = "affine-moduli/1"

DEFAULT_SEED = 0

# === Exit codes ===
EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_NON_FINITE = 3
EXIT_UNKNOWN_NAME = 4      # unknown family or verify scope
EXIT_BAD_PARAMS = 5
EXIT_SINGULAR = 6
EXIT_DEGENERATE = 7
