"""Application constants - centralized configuration values"""

import os

# ===== THEOREM PARAMETERS =====
DEFAULT_K = 4  # list size
DEFAULT_D = 1  # independence distance in (FORB)
DEFAULT_B = 31  # size bound on the reducible configurations

MAX_SHORT_CYCLE = 5
MAX_CONFIGURATION_SIZE = 31

# ===== COMPUTATION CAPS =====
ORACLE_VERTEX_CAP = int(os.getenv("FLEXCOLOR_CAP", "12"))  # same variable as RunConfig.cap
ENUMERATION_VERTEX_CAP = int(os.getenv("FLEXCOLOR_ENUM_CAP", "31"))
COUNTING_VERTEX_CAP = 80
ENUMERATION_TIME_BUDGET = float(os.getenv("FLEXCOLOR_TIME_BUDGET", "60"))  # seconds

# Stalk options kept per good neighbor in the mainredu search; beyond this it is not exhaustive
STALK_CANDIDATES_PER_NEIGHBOR = 6

# ===== DISCHARGING =====
CHARGE_DENOMINATOR = 72  # every charge denominator divides this

# ===== SAMPLING =====
DEFAULT_TRIALS = 1000
DEFAULT_SEED = 0

# ===== EXIT CODES =====
EXIT_OK = 0
EXIT_NO = 1
EXIT_INPUT_ERROR = 2
EXIT_THEOREM_VIOLATION = 3

# ===== STALK KINDS =====
STALK_KINDS = ("a", "b", "c", "d", "e", "f")
EXCELLENT_KINDS = frozenset({"a", "d", "e", "f"})

CONFIGURATION_KINDS = ("small-deg2", "small-33", "mainredu", "fiveredu", "spec4")
