from typing import Optional, Tuple

from mcg_certs.utils.constants import (
    EXIT_FALLBACK,
    EXIT_INPUT_ERROR,
    EXIT_INVARIANT,
)


class CertificationError(ValueError):
    """Malformed input or a failed precondition."""

    exit_code = EXIT_INPUT_ERROR


class ShapeError(CertificationError):
    pass


class InsufficientFixedRankError(CertificationError):

    def __init__(self, required: int, actual: int):
        super().__init__(f"Fixed subspace has rank {actual}, {required} required")
        self.required = required
        self.actual = actual


class OrbitSumNotFixedError(CertificationError):
    pass


class NotTrivialModError(CertificationError):

    def __init__(self, modulus: int, entry: Tuple[int, int], value: int):
        super().__init__(
            f"Reduction mod {modulus} is not the identity: entry {entry} is {value} mod {modulus}"
        )
        self.modulus = modulus
        self.entry = entry
        self.value = value


class FallbackRegime(CertificationError):
    """The input lies in a regime where no certificate is produced."""

    exit_code = EXIT_FALLBACK

    def __init__(self, message: str, note: Optional[str] = None):
        super().__init__(message)
        self.note = note


class InvariantViolation(RuntimeError):
    """An internal invariant failed; the computation cannot be trusted."""

    exit_code = EXIT_INVARIANT


class UnconfirmedSpreadBound(FallbackRegime):
    """The spread automaton covers the whole cover, so the floor bound is not justified."""

    def __init__(self, message: str, n_star: int, width: int):
        super().__init__(message)
        self.n_star = n_star
        self.width = width
