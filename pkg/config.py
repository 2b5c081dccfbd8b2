import os

DEFAULT_FIELD = "Q"
DEFAULT_TRUNC = 5
DAGGER_TRUNC = 4  # F† constructions and adjunction batteries
ETA_TRUNC = 6
DEFAULT_SEED = 0
DEFAULT_COUNT = 10

SAMPLE_PAIRS = 200
SAMPLE_TRIPLES = 300
ADJUNCTION_PAIRS = 20

RANDOM_PROFILES = ("free", "quotient", "shifted", "mixed")
DEFAULT_PROFILE = "mixed"
MAX_GENERATOR_DEGREE = 2
MAX_SUMMANDS = 2

LOG_LEVEL = os.environ.get("FIMOD_LOG_LEVEL", "WARNING")
DEFAULT_JOBS = 1

SUITES = (
    "skeleton",
    "functoriality",
    "leibniz",
    "eta",
    "theta",
    "hom",
    "alpha",
    "beta",
    "gamma",
    "adjunctions",
    "ses",
    "gl",
    "hypotheses",
)
