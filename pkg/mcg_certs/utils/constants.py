DEFAULT_SEED = 20240229

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_FALLBACK = 2
EXIT_INVARIANT = 3

# Largest size for which the determinant is evaluated through the literal
# partition sum; larger matrices go through Newton's identities.
MAX_LITERAL_PARTITION_SIZE = 12

LEFSCHETZ_MIN_K = 3
FALLBACK_NOTE = (
    "k < 3: no Lefschetz witness is certified; the bound holds after replacing "
    "C by min{C, C0, C1, C2}"
)

SPREAD_OFFSETS = (2, 3)
DEFAULT_SPREAD_OFFSET = 3

# Covering-distortion constant (g - 1) * 80 * 2^13 * e^54 * pi
APT_RATIONAL_FACTOR = 80 * 2 ** 13
APT_EXP_POWER = 54

DECIMAL_DIGITS = 20

SURJECTIVITY_DEPENDENCY = "Sp reduction surjectivity (cited)"
SP2_MOD2_ORDER = 6
SP2_MAX_WORD_LENGTH = 6

COVER_BASIS_GAMMA = "gamma"
COVER_BASIS_DELTA = "delta"
COVER_BASIS_ETA = "eta"
COVER_BASIS_ALPHA = "alpha"

LIFT_SEPARATING = "separating"
LIFT_ALPHA_PREIMAGE = "alpha_preimage"

BOUND_TEMPLATE = "C/(g*j)"

# i(phi beta, alpha) + i(phi alpha, alpha) for the shipped genus-2 configuration
PAPER_INT_SUM = 576
