"""
Configuration and constants for penney_race.
"""

import os

from dotenv import load_dotenv

# Load a local .env if present (only diagnostics read from it)
load_dotenv()

# Rendering
DECIMAL_DIGITS = 12
MINIMIZER_DIGITS = 4

# Output formats
OUTPUT_FORMATS = ("human", "json", "csv")
DEFAULT_FORMAT = "human"

# Alphabet
SUCCESS = "S"
FAILURE = "F"
ALIASES = {
    "S": "S",
    "F": "F",
    "H": "S",
    "T": "F",
}

# Verification
DEFAULT_NMAX = 30

# Sweeps
DEFAULT_GRID = 99
GOLDEN_TOLERANCE = 1e-6
SWEEP_MODES = ("duel", "trio")

# Monte Carlo (splitmix64 constants)
DEFAULT_GAMES = 100_000
DEFAULT_SEED = 0
SPLITMIX64_GAMMA = 0x9E3779B97F4A7C15
SPLITMIX64_MUL1 = 0xBF58476D1CE4E5B9
SPLITMIX64_MUL2 = 0x94D049BB133111EB
MASK64 = (1 << 64) - 1

# Exit codes
EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_MISMATCH = 3

# Diagnostics go to stderr; the level is the only environment override
LOG_LEVEL = os.environ.get("PENNEY_LOG_LEVEL", "WARNING").upper()
