from dataclasses import dataclass
from typing import (
    Dict,
    List,
    Optional,
    Protocol,
    Sequence,
    Tuple,
)

import logging

from mcg_certs.algebra.determinant import det_bareiss
from mcg_certs.algebra.matrix import (
    IntMatrix,
    is_identity,
    kernel_rank_rational,
    rank_of_rows,
)
from mcg_certs.utils.errors import (
    CertificationError,
    OrbitSumNotFixedError,
    ShapeError,
)


logger = logging.getLogger(__name__)


class IntersectionSpace(Protocol):
    """Anything that carries a genus and an antisymmetric intersection form."""

    genus: int
    form: IntMatrix


@dataclass(frozen=True)
class SymplecticSpace:
    """H_1(S_g; Z) in the ordered basis (a_1, b_1, ..., a_g, b_g)."""

    genus: int
    form: IntMatrix

    @property
    def dimension(self) -> int:
        return 2 * self.genus

    def basis_vector(self, label: str) -> Tuple[int, ...]:
        """Unit vector for a label such as 'a1' or 'b3'."""
        kind, index = label[0], int(label[1:])
        if kind not in ("a", "b") or not 1 <= index <= self.genus:
            raise CertificationError(f"Unknown basis label {label!r} for genus {self.genus}")

        position = 2 * (index - 1) + (kind == "b")
        return tuple(int(i == position) for i in range(self.dimension))


def standard_form(genus: int) -> IntMatrix:
    n = 2 * genus
    rows = [[0] * n for _ in range(n)]
    for i in range(genus):
        rows[2 * i][2 * i + 1] = 1
        rows[2 * i + 1][2 * i] = -1

    return IntMatrix(rows)


def standard_space(g: int) -> SymplecticSpace:
    if g < 1:
        raise CertificationError(f"Genus must be at least 1, got {g}")

    return SymplecticSpace(genus=g, form=standard_form(g))


def _vector(values: Sequence[int], n: int, what: str = "vector") -> Tuple[int, ...]:
    vec = tuple(int(x) for x in values)
    if len(vec) != n:
        raise ShapeError(f"{what} has length {len(vec)}, expected {n}")

    return vec


def intersection(x: Sequence[int], y: Sequence[int], S: IntersectionSpace) -> int:
    """Algebraic intersection x^T J y."""
    n = S.form.rows
    return sum(a * b for a, b in zip(_vector(x, n), S.form.apply(_vector(y, n))))


def _require_space_shape(M: IntMatrix, S: IntersectionSpace) -> None:
    n = S.form.rows
    if M.shape != (n, n):
        raise ShapeError(f"Matrix of shape {M.shape} does not act on a space of rank {n}")


def preserves_form(M: IntMatrix, form: IntMatrix) -> bool:
    return M.T @ form @ M == form


def is_symplectic(M: IntMatrix, S: IntersectionSpace) -> bool:
    _require_space_shape(M, S)
    return preserves_form(M, S.form)


def transvection(c: Sequence[int], k: int, S: IntersectionSpace) -> IntMatrix:
    """Homology action of T_c^k: x -> x + k * i(x, c) * c."""
    n = S.form.rows
    vec = _vector(c, n, "curve class")
    if not any(vec) or k == 0:
        return IntMatrix.identity(n)

    # i(x, c) = x^T J c, so the update is the outer product c (J c)^T.
    return IntMatrix.identity(n) + IntMatrix.outer(vec, S.form.apply(vec)) * k


def m_value(M: IntMatrix, S: IntersectionSpace) -> int:
    """Dimension of the fixed subspace of M over Q."""
    if not is_symplectic(M, S):
        raise CertificationError("m-value requires a symplectic matrix")

    return kernel_rank_rational(M - IntMatrix.identity(M.rows))


def is_torelli(M: IntMatrix) -> bool:
    if not M.is_square:
        raise ShapeError(f"Square matrix required, got {M.rows}x{M.cols}")

    return is_identity(M)


def mapping_torus_betti(M: IntMatrix, S: IntersectionSpace) -> int:
    """First Betti number of the mapping torus: m-value plus one."""
    return m_value(M, S) + 1


def preserves_intersection_class(
    M: IntMatrix,
    c: Sequence[int],
    S: IntersectionSpace,
    modulus: Optional[int] = None,
) -> bool:
    """True iff i(Mx, c) = i(x, c) for every x (optionally modulo `modulus`).

    This is the homology-level condition under which a map preserves the kernel
    of x -> i(x, c) mod d and therefore lifts to the corresponding cyclic cover.
    """
    _require_space_shape(M, S)
    n = S.form.rows
    vec = _vector(c, n, "curve class")
    jc = S.form.apply(vec)
    # i(Mx, c) - i(x, c) = ((M^T - I) J c) . x
    defect = (M.T - IntMatrix.identity(n)).apply(jc)
    if modulus is None:
        return not any(defect)

    return all(v % modulus == 0 for v in defect)


class _SparseOperator:

    def __init__(self, A: IntMatrix):
        self.size = A.rows
        self.rows: List[List[Tuple[int, int]]] = [
            [(j, value) for j, value in enumerate(A.row(i)) if value]
            for i in range(A.rows)
        ]

    def __call__(self, vector: Sequence[int]) -> Tuple[int, ...]:
        return tuple(sum(value * vector[j] for j, value in row) for row in self.rows)


@dataclass(frozen=True)
class OrbitSumResult:
    dimension: int
    invariant: bool

    def to_record(self) -> Dict[str, object]:
        return {"dimension": self.dimension, "invariant": self.invariant}


def _vector_sum(vectors: Sequence[Sequence[int]], size: int) -> Tuple[int, ...]:
    return tuple(sum(v[i] for v in vectors) for i in range(size))


def orbit_sum_subspace(A: IntMatrix, c: Sequence[int], n: int, k: int) -> OrbitSumResult:
    """Dimension and A^(2^k)-invariance of span{A^j c_k : 0 <= j < 2^k}.

    c_k = sum_{i < 2^(n-k)} A^(i 2^k) c, built from a full orbit sum
    sum_{i < 2^n} A^i c that must itself be A-fixed.
    """
    if not A.is_square:
        raise ShapeError(f"Square matrix required, got {A.rows}x{A.cols}")

    if not 0 <= k < n:
        raise CertificationError(f"Need 0 <= k < n, got k={k}, n={n}")

    size = A.rows
    vec = _vector(c, size)
    apply = _SparseOperator(A)

    period, block = 2 ** n, 2 ** k
    orbit = [vec]
    for _ in range(period + block - 1):
        orbit.append(apply(orbit[-1]))

    # A s - s = A^(2^n) c - c for the full orbit sum s.
    if orbit[period] != orbit[0]:
        raise OrbitSumNotFixedError(f"The orbit sum over 2^{n} iterates is not fixed by A")

    def shifted_sum(j: int) -> Tuple[int, ...]:
        # A^j c_k
        return _vector_sum([orbit[i * block + j] for i in range(period // block)], size)

    spanning = [shifted_sum(j) for j in range(block)]
    dimension = rank_of_rows(spanning, size)
    images = [shifted_sum(j + block) for j in range(block)]
    invariant = rank_of_rows(spanning + images, size) == dimension

    logger.debug(f"Orbit sum n={n} k={k}: dimension {dimension}, invariant {invariant}")
    return OrbitSumResult(dimension=dimension, invariant=invariant)


def shift_matrix(size: int) -> IntMatrix:
    """Cyclic shift e_i -> e_(i+1 mod size)."""
    rows = [[0] * size for _ in range(size)]
    for i in range(size):
        rows[(i + 1) % size][i] = 1

    return IntMatrix(rows)


def is_unimodular_symplectic(P: IntMatrix, S: IntersectionSpace) -> bool:
    return is_symplectic(P, S) and abs(det_bareiss(P)) == 1
