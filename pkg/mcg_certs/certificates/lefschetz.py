"""
Lefschetz lower-bound certificates
----------------------------------

For a symplectic f_* with an m-dimensional fixed subspace, a basis change puts
f_* in the block form [[I_k, *], [0, M_comp]]. Keeping an odd-size lower-right
block M_odd (of determinant 1) guarantees some power M_odd^j, 1 <= j <= size,
with positive trace, since otherwise the trace-partition expansion of
det(M_odd) = 1 would have the wrong sign. The full trace then picks up the
fixed directions as well and the Lefschetz number 2 - Tr(f_*^j) is negative
once k >= 3, which bounds the curve-complex translation length below by C/(g j).
"""

from dataclasses import dataclass
from typing import (
    Any,
    Dict,
    List,
    Optional,
    Tuple,
)

import logging

from mcg_certs.algebra.determinant import det_bareiss
from mcg_certs.algebra.matrix import (
    IntMatrix,
    inverse_unimodular,
    iter_powers,
    mat_pow,
)
from mcg_certs.algebra.smith import (
    complete_basis,
    integer_kernel_basis,
)
from mcg_certs.certificates.base import BaseCertificate
from mcg_certs.homology.symplectic import (
    IntersectionSpace,
    is_symplectic,
    m_value,
    standard_space,
)
from mcg_certs.utils import symbolic
from mcg_certs.utils.constants import (
    BOUND_TEMPLATE,
    FALLBACK_NOTE,
    LEFSCHETZ_MIN_K,
)
from mcg_certs.utils.errors import (
    CertificationError,
    FallbackRegime,
    InsufficientFixedRankError,
    InvariantViolation,
    ShapeError,
)


logger = logging.getLogger(__name__)


def _is_block_form(M_prime: IntMatrix, k: int) -> bool:
    """The first k columns are the first k unit vectors."""
    n = M_prime.rows
    return all(M_prime.col(j) == tuple(int(i == j) for i in range(n)) for j in range(k))


def fixed_block_basis(M: IntMatrix, k: int) -> Tuple[IntMatrix, IntMatrix]:
    """Returns (P, M') with M' = P M P^-1 = [[I_k, *], [0, M_comp]] and P unimodular.

    The first k new basis vectors are taken from a basis of the saturated fixed
    lattice ker(M - I), then completed to a basis of Z^n.
    """
    if not M.is_square:
        raise ShapeError(f"Square matrix required, got {M.rows}x{M.cols}")

    if k < 0:
        raise CertificationError(f"k must be non-negative, got {k}")

    n = M.rows
    kernel = integer_kernel_basis(M - IntMatrix.identity(n))
    if len(kernel) < k:
        raise InsufficientFixedRankError(k, len(kernel))

    Q = complete_basis(kernel[:k], n)
    P = inverse_unimodular(Q)
    M_prime = P @ M @ Q

    if not _is_block_form(M_prime, k):
        raise InvariantViolation(f"Basis change did not produce an I_{k} block")

    logger.debug(f"Fixed block of size {k} split off a {n}x{n} matrix (fixed rank {len(kernel)})")
    return P, M_prime


def complement_block(M_prime: IntMatrix, k: int, g: int) -> Tuple[IntMatrix, int]:
    """Odd-size lower-right block: 2g - k when k is odd, 2g - k + 1 when k is even."""
    if k == 0:
        raise FallbackRegime("k = 0 leaves no fixed direction to interpolate with", note=FALLBACK_NOTE)

    if not 0 < k <= 2 * g:
        raise CertificationError(f"Need 1 <= k <= 2g, got k={k}, g={g}")

    if M_prime.shape != (2 * g, 2 * g):
        raise ShapeError(f"Matrix of shape {M_prime.shape} does not act on genus {g}")

    if not _is_block_form(M_prime, k):
        raise CertificationError(f"Matrix is not in block form with an I_{k} block")

    start = k if k % 2 else k - 1
    m = 2 * g - start
    return M_prime.submatrix(start, start), m


def trace_witness(M_odd: IntMatrix) -> Tuple[int, int]:
    """Smallest j with Tr(M_odd^j) >= 1, and that trace."""
    if not M_odd.is_square:
        raise ShapeError(f"Square matrix required, got {M_odd.rows}x{M_odd.cols}")

    m = M_odd.rows
    if m % 2 == 0:
        raise CertificationError(f"Witness search needs an odd-size block, got size {m}")

    det = det_bareiss(M_odd)
    if det != 1:
        raise CertificationError(f"Witness search needs determinant 1, got {det}")

    for j, power in iter_powers(M_odd, m):
        t = power.trace()
        if t >= 1:
            return j, t

    raise InvariantViolation(f"No power of a determinant-1 block of odd size {m} has positive trace")


def lefschetz_number(M: IntMatrix, j: int) -> int:
    """2 - Tr(M^j)"""
    if j < 1:
        raise CertificationError(f"j must be at least 1, got {j}")

    return 2 - mat_pow(M, j).trace()


def lower_bound_expression(k: int, g: int) -> Dict[str, str]:
    """The interpolating lower bound C / (g (2g - k + 1)) at fixed k and g."""
    if g < 1 or not 0 <= k <= 2 * g:
        raise CertificationError(f"Need g >= 1 and 0 <= k <= 2g, got k={k}, g={g}")

    factor = symbolic.to_sympy(1) / (g * (2 * g - k + 1))
    return {
        "expression": symbolic.render(symbolic.C / (symbolic.g * (2 * symbolic.g - k + 1))),
        "value": symbolic.render(symbolic.C * factor),
        "factor_decimal": symbolic.decimal(factor),
    }


@dataclass(frozen=True)
class LowerBoundCert(BaseCertificate):
    genus: int
    k: int
    m: int
    witness_j: int
    trace_at_j: int
    full_trace_at_j: int
    lefschetz_at_j: int

    kind = "lower_bound"

    @property
    def bound_expr(self) -> str:
        """C/(g*j) with j instantiated."""
        return symbolic.render(symbolic.C / (symbolic.g * self.witness_j))

    @property
    def bound_value(self) -> str:
        return symbolic.render(symbolic.C / (self.genus * self.witness_j))

    def violations(self) -> List[str]:
        problems = []
        if self.m % 2 == 0:
            problems.append(f"m = {self.m} is even")
        if self.m > 2 * self.genus - self.k + 1:
            problems.append(f"m = {self.m} exceeds 2g - k + 1 = {2 * self.genus - self.k + 1}")
        if not 1 <= self.witness_j <= self.m:
            problems.append(f"witness j = {self.witness_j} outside 1..{self.m}")
        if self.trace_at_j < 1:
            problems.append(f"block trace {self.trace_at_j} at j is not positive")
        if self.lefschetz_at_j != 2 - self.full_trace_at_j:
            problems.append("Lefschetz number does not match the full trace")
        if self.k >= LEFSCHETZ_MIN_K and self.lefschetz_at_j >= 0:
            problems.append(f"Lefschetz number {self.lefschetz_at_j} is not negative")

        return problems

    def check(self) -> "LowerBoundCert":
        problems = self.violations()
        if problems:
            raise InvariantViolation("Lower-bound certificate is inconsistent: " + "; ".join(problems))

        return self

    def to_record(self) -> Dict[str, Any]:
        return {
            "genus": self.genus,
            "k": self.k,
            "m": self.m,
            "witness_j": self.witness_j,
            "trace_at_j": self.trace_at_j,
            "full_trace_at_j": self.full_trace_at_j,
            "lefschetz_at_j": self.lefschetz_at_j,
            "bound": BOUND_TEMPLATE,
            "bound_at_j": self.bound_expr,
            "bound_value": self.bound_value,
        }

    def summary_lines(self) -> List[str]:
        return [
            f"genus = {self.genus}, k = {self.k}, complement size m = {self.m}",
            f"witness j = {self.witness_j} (2g - k + 1 = {2 * self.genus - self.k + 1})",
            f"Tr(block^j) = {self.trace_at_j}, Tr(f^j) = {self.full_trace_at_j}",
            f"L(f^j) = {self.lefschetz_at_j}",
            f"lower bound = {self.bound_expr} = {self.bound_value}",
        ]


def lower_bound_certificate(
    M: IntMatrix,
    k: int,
    space: Optional[IntersectionSpace] = None,
) -> LowerBoundCert:
    if not M.is_square or M.rows % 2:
        raise ShapeError(f"Expected a 2g x 2g matrix, got {M.rows}x{M.cols}")

    genus = M.rows // 2
    space = space or standard_space(genus)
    if not is_symplectic(M, space):
        raise CertificationError("Lower-bound certificates require a symplectic matrix")

    if k < LEFSCHETZ_MIN_K:
        raise FallbackRegime(f"k = {k} is below {LEFSCHETZ_MIN_K}; no Lefschetz certificate", note=FALLBACK_NOTE)

    fixed = m_value(M, space)
    if fixed < k:
        raise InsufficientFixedRankError(k, fixed)

    _, M_prime = fixed_block_basis(M, k)
    M_odd, m = complement_block(M_prime, k, genus)
    j, t = trace_witness(M_odd)

    full_trace = mat_pow(M, j).trace()
    cert = LowerBoundCert(
        genus=genus,
        k=k,
        m=m,
        witness_j=j,
        trace_at_j=t,
        full_trace_at_j=full_trace,
        lefschetz_at_j=2 - full_trace,
    )
    logger.debug(f"Certificate g={genus} k={k}: j={j}, L={cert.lefschetz_at_j}")
    return cert.check()
