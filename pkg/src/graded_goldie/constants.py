"""Shared constants for graded-goldie."""

# Largest finite group accepted from a multiplication table
MAX_TABLE_ORDER = 64

# Prime fields must fit a signed 32-bit word
MAX_PRIME = 2**31

# Default search bounds
DEFAULT_ORDER_BOUND = 1000
DEFAULT_N_MAX = 1000
DEFAULT_M_MAX = 100
DEFAULT_MAX_DEGREE = 6
DEFAULT_COEFF_BOUND = 6
DEFAULT_SEED = 0

# Unknowns allowed in a single annihilator / census solve
WINDOW_CAP = 4096

# Components wider than this are not split into coefficient shapes
MAX_SHAPE_BASIS = 4

# Field flag for exact rationals
RATIONAL_FIELD_FLAG = "q"

# Environment variables
LOG_LEVEL_ENV = "LOG_LEVEL"
CONFIG_PATH_ENV = "GRADED_GOLDIE_CONFIG"
