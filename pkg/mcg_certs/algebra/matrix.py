from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import (
    Any,
    Iterable,
    List,
    Sequence,
    Tuple,
)

import logging
import numpy as np

from mcg_certs.utils.errors import (
    CertificationError,
    InvariantViolation,
    ShapeError,
)


logger = logging.getLogger(__name__)

_to_python_int = np.frompyfunc(int, 1, 1)

# Below this fill ratio products are formed row by row over the nonzero entries.
SPARSE_DENSITY = 0.25


def _as_int_array(entries: Any) -> np.ndarray:
    arr = np.array(entries, dtype=object)
    if arr.ndim == 1 and arr.size == 0:
        arr = arr.reshape(0, 0)

    if arr.ndim != 2:
        raise ShapeError(f"Matrix entries must form a rectangular 2D array, got {arr.ndim} dimensions")

    if arr.size:
        arr = _to_python_int(arr).astype(object)

    arr.flags.writeable = False
    return arr


class IntMatrix:
    """Immutable matrix of arbitrary-precision integers."""

    __slots__ = ("_data", "_nnz")

    def __init__(self, entries: Any):
        self._data = _as_int_array(entries)
        self._nnz = None

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "IntMatrix":
        obj = cls.__new__(cls)
        arr = np.array(arr, dtype=object)
        arr.flags.writeable = False
        obj._data = arr
        obj._nnz = None
        return obj

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> "IntMatrix":
        if not columns:
            raise ShapeError("At least one column is required")

        return cls(columns).T

    @classmethod
    def outer(cls, left: Sequence[int], right: Sequence[int]) -> "IntMatrix":
        return cls([[int(a) * int(b) for b in right] for a in left])

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def array(self) -> np.ndarray:
        """Read-only object-dtype view of the entries."""
        return self._data

    @property
    def nnz(self) -> int:
        if self._nnz is None:
            self._nnz = int(np.count_nonzero(self._data != 0)) if self._data.size else 0

        return self._nnz

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix._wrap(self._data.T)

    def entries(self) -> List[int]:
        """Entries in row-major order."""
        return [int(x) for x in self._data.ravel()]

    def to_lists(self) -> List[List[int]]:
        return [[int(x) for x in row] for row in self._data]

    def row(self, i: int) -> Tuple[int, ...]:
        return tuple(int(x) for x in self._data[i])

    def col(self, j: int) -> Tuple[int, ...]:
        return tuple(int(x) for x in self._data[:, j])

    def submatrix(self, row_start: int, col_start: int, row_stop: int = None, col_stop: int = None) -> "IntMatrix":
        return IntMatrix._wrap(self._data[row_start:row_stop, col_start:col_stop])

    def trace(self) -> int:
        if not self.is_square:
            raise ShapeError(f"Trace requires a square matrix, got {self.shape}")

        return sum(int(self._data[i, i]) for i in range(self.rows))

    def apply(self, vector: Sequence[int]) -> Tuple[int, ...]:
        if len(vector) != self.cols:
            raise ShapeError(f"Vector of length {len(vector)} does not match {self.cols} columns")

        vec = np.array([int(v) for v in vector], dtype=object)
        if self.cols == 0:
            return tuple(0 for _ in range(self.rows))

        return tuple(int(x) for x in self._data.dot(vec))

    def _sparse_matmul(self, other: "IntMatrix") -> np.ndarray:
        out = np.empty((self.rows, other.cols), dtype=object)
        for i in range(self.rows):
            acc = np.zeros(other.cols, dtype=object)
            for j in np.flatnonzero(self._data[i] != 0):
                acc = acc + self._data[i, j] * other._data[j]
            out[i] = acc

        return out

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if not isinstance(other, IntMatrix):
            return NotImplemented

        if self.cols != other.rows:
            raise ShapeError(f"Cannot multiply {self.shape} by {other.shape}")

        if self.cols == 0:
            return IntMatrix.zeros(self.rows, other.cols)

        if self.nnz <= SPARSE_DENSITY * self.rows * self.cols:
            return IntMatrix._wrap(self._sparse_matmul(other))

        return IntMatrix._wrap(np.matmul(self._data, other._data))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if not isinstance(other, IntMatrix):
            return NotImplemented

        if self.shape != other.shape:
            raise ShapeError(f"Cannot add {self.shape} and {other.shape}")

        return IntMatrix._wrap(self._data + other._data)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if not isinstance(other, IntMatrix):
            return NotImplemented

        if self.shape != other.shape:
            raise ShapeError(f"Cannot subtract {other.shape} from {self.shape}")

        return IntMatrix._wrap(self._data - other._data)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix._wrap(-self._data)

    def __mul__(self, scalar: int) -> "IntMatrix":
        if not isinstance(scalar, (int, np.integer)):
            return NotImplemented

        return IntMatrix._wrap(self._data * int(scalar))

    __rmul__ = __mul__

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return int(self._data[i, j])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented

        return self.shape == other.shape and bool(np.all(self._data == other._data))

    def __hash__(self) -> int:
        return hash((self.shape, tuple(self.entries())))

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_lists()})"


@dataclass(frozen=True)
class TraceSequence:
    """Traces of M, M^2, ..., M^jmax."""

    values: Tuple[int, ...]

    @property
    def jmax(self) -> int:
        return len(self.values)

    def at(self, j: int) -> int:
        if not 1 <= j <= self.jmax:
            raise IndexError(f"Trace index {j} outside 1..{self.jmax}")

        return self.values[j - 1]


def _require_square(M: IntMatrix) -> None:
    if not M.is_square:
        raise ShapeError(f"Square matrix required, got {M.rows}x{M.cols}")


def mat_pow(M: IntMatrix, j: int) -> IntMatrix:
    _require_square(M)
    if j < 0:
        raise CertificationError(f"Negative exponent {j} is not supported")

    result = IntMatrix.identity(M.rows)
    base = M
    while j:
        if j & 1:
            result = result @ base
        j >>= 1
        if j:
            base = base @ base

    return result


def iter_powers(M: IntMatrix, jmax: int) -> Iterable[Tuple[int, IntMatrix]]:
    """Yields (j, M^j) for j = 1..jmax."""
    _require_square(M)
    power = M
    for j in range(1, jmax + 1):
        if j > 1:
            power = power @ M
        yield j, power


def trace_powers(M: IntMatrix, jmax: int) -> TraceSequence:
    _require_square(M)
    if jmax < 1:
        raise CertificationError(f"jmax must be at least 1, got {jmax}")

    return TraceSequence(tuple(power.trace() for _, power in iter_powers(M, jmax)))


def _primitive(row: List[int]) -> List[int]:
    g = reduce(gcd, row, 0)
    if g > 1:
        return [x // g for x in row]

    return row


def rank_of_rows(rows: Sequence[Sequence[int]], ncols: int) -> int:
    """Rank over Q of the given integer row vectors by fraction-free elimination."""
    work = [list(int(x) for x in r) for r in rows if any(r)]
    rank = 0
    for c in range(ncols):
        if rank == len(work):
            break

        pivot = next((r for r in range(rank, len(work)) if work[r][c] != 0), None)
        if pivot is None:
            continue

        work[rank], work[pivot] = work[pivot], work[rank]
        p_row = work[rank]
        p = p_row[c]
        for r in range(rank + 1, len(work)):
            f = work[r][c]
            if f:
                work[r] = _primitive([p * x - f * y for x, y in zip(work[r], p_row)])
        rank += 1

    return rank


def rank_rational(M: IntMatrix) -> int:
    if M.rows <= M.cols:
        return rank_of_rows(M.to_lists(), M.cols)

    return rank_of_rows(M.T.to_lists(), M.rows)


def kernel_rank_rational(M: IntMatrix) -> int:
    """Dimension over Q of the null space of M."""
    return M.cols - rank_rational(M)


def reduce_mod(M: IntMatrix, n: int) -> IntMatrix:
    if n < 2:
        raise CertificationError(f"Modulus must be at least 2, got {n}")

    return IntMatrix([[x % n for x in row] for row in M.to_lists()])


def is_identity(M: IntMatrix) -> bool:
    return M.is_square and M == IntMatrix.identity(M.rows)


def inverse_unimodular(M: IntMatrix) -> IntMatrix:
    """Exact inverse of an integer matrix with determinant +1 or -1."""
    _require_square(M)
    n = M.rows
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M.to_lists())]
    for c in range(n):
        pivot = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if pivot is None:
            raise CertificationError("Matrix is singular")

        aug[c], aug[pivot] = aug[pivot], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]

    inverse = [row[n:] for row in aug]
    if any(x.denominator != 1 for row in inverse for x in row):
        raise CertificationError("Matrix is not unimodular")

    return IntMatrix([[int(x) for x in row] for row in inverse])


def check_integral(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise InvariantViolation(f"{what} is not an integer: {value}")

    return int(value)
