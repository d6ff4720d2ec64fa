import os

# -------------------------------------
# FORMAT
# -------------------------------------
FORMAT_TAG = "ncsp-pg v1"

# Reported distances must fit a signed 64-bit integer.
MAX_WEIGHT = 2 ** 60
MAX_DISTANCE = 2 ** 63 - 1

# -------------------------------------
# GENERATORS / ORACLES
# -------------------------------------
STUB_WEIGHT = 1
MIN_GEN_WEIGHT = 1
MAX_GEN_WEIGHT = 100
BRUTE_FORCE_MAX_EDGES = 64
SATURATION_CHECK_MAX_EDGES = 5000
DEFAULT_SEED = 7
MAX_SEEDED_VERTICES = 20_000
MAX_SEEDED_PAIRS = 50

# -------------------------------------
# BENCH
# -------------------------------------
DEFAULT_BENCH_SIZES = (10_000, 20_000, 40_000, 80_000)

# -------------------------------------
# RUNTIME CHECKS
# -------------------------------------
CHECK_LEVELS = ("fast", "full")


def check_level() -> str:
    """Returns the NCSP_CHECK level, falling back to 'fast' on unknown values."""
    level = os.environ.get("NCSP_CHECK", "fast").strip().lower()
    return level if level in CHECK_LEVELS else "fast"


def full_checks() -> bool:
    return check_level() == "full"
