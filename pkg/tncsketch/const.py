"""Constants for tncsketch."""

from logging import Logger, getLogger

LOGGER: Logger = getLogger(__package__)

# Package metadata
DOMAIN = "tncsketch"

# Estimation methods
METHOD_EXACT = "exact"
METHOD_GENERAL = "general"
METHOD_ACYCLIC = "acyclic"
METHOD_AUTO = "auto"
METHOD_BASELINE = "baseline"  # Prior cross-correlation chain, experiments only
ESTIMATION_METHODS = (METHOD_EXACT, METHOD_GENERAL, METHOD_ACYCLIC, METHOD_AUTO)

# Hashing
MERSENNE_PRIME_61 = (1 << 61) - 1
SIGN_INDEPENDENCE = 4  # Sign hashes are 4-wise independent
ROW_INDEPENDENCE = 2  # Row (bucket) hashes are 2-wise independent

# Seed derivation purpose tags
SEED_TAG_CONTRACTION = "contraction"
SEED_TAG_RECURSIVE = "recursive"
SEED_TAG_REPETITION = "repetition"
SEED_TAG_COMPONENT = "component"
SEED_TAG_PARTIAL = "partial"
SEED_TAG_CHAIN = "chain"
SEED_TAG_SIGN = "sign"
SEED_TAG_ROW = "row"
SEED_TAG_LEAF = "leaf"
SEED_TAG_NODE = "node"
SEED_TAG_TRIAL = "trial"

# Default configuration values
DEFAULT_SKETCH_SIZE = 64
DEFAULT_REPETITIONS = 1
DEFAULT_SEED = 20250101
DEFAULT_ORACLE_BUDGET = 10**7  # Summand evaluations
DEFAULT_PARTIAL_BUDGET = 4096  # Output cells enumerated by partial estimation
DEFAULT_PARALLEL = 1
DEFAULT_TRIALS = 1000

# (epsilon, delta) -> (m, R) derivation constants
DEFAULT_MEDIAN_CONSTANT = 8.0  # R = ceil(c * ln(1 / delta))
DEFAULT_CHEBYSHEV_FAILURE = 0.25  # Constant failure probability of one repetition
ACYCLIC_LINEARIZATION_FACTOR = 16  # m >= 16 t keeps (1 + 8/m)^(2t) - 1 <= 32 t / m
ACYCLIC_VARIANCE_FACTOR = 32

# Numerical tolerances
IMAG_RESIDUE_TOLERANCE = 1e-6  # Relative to 1 + |real|
IMAG_RESIDUE_WARNING = 1e-9
DENSE_MAX_COLUMNS = 4096  # Size guard for dense sketch matrices

# Environment
ENV_SEED = "TNC_SEED"

# Error classification
ERROR_TYPE_VALIDATION = "validation"
ERROR_TYPE_IO = "io"
ERROR_TYPE_BUDGET = "budget"
ERROR_TYPE_NUMERICAL = "numerical"

# CLI exit codes
EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_BUDGET = 4
EXIT_NUMERICAL = 5

EXIT_CODES = {
    ERROR_TYPE_VALIDATION: EXIT_VALIDATION,
    ERROR_TYPE_IO: EXIT_IO,
    ERROR_TYPE_BUDGET: EXIT_BUDGET,
    ERROR_TYPE_NUMERICAL: EXIT_NUMERICAL,
}

# Experiment fixtures
FIXTURE_LOWERBOUND_CHAIN = "lowerbound-chain"
FIXTURE_MOMENTS_GENERAL = "moments-general"
FIXTURE_MOMENTS_ACYCLIC = "moments-acyclic"
EXPERIMENT_FIXTURES = (FIXTURE_LOWERBOUND_CHAIN, FIXTURE_MOMENTS_GENERAL, FIXTURE_MOMENTS_ACYCLIC)
