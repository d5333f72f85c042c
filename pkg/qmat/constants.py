"""
Constants for the CLI.
"""

DEFAULT_MAX_M = 3
DEFAULT_MAX_N = 3
DEFAULT_MAX_DEGREE = 4
DEFAULT_HASSE_CAP = 64
DEFAULT_SEED = 1997
DEFAULT_FUZZ_SAMPLES = 1000

OUTPUT_FORMATS = ("text", "json", "dot")
