from typing import (
    List,
    Sequence,
    Tuple,
)

import logging

from mcg_certs.algebra.matrix import (
    IntMatrix,
    inverse_unimodular,
)
from mcg_certs.utils.errors import (
    CertificationError,
    InvariantViolation,
)


logger = logging.getLogger(__name__)


def _identity_lists(n: int) -> List[List[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


class _SmithReducer:
    """Row/column reduction that records the unimodular transforms it applies."""

    def __init__(self, M: IntMatrix):
        self.a = M.to_lists()
        self.m, self.n = M.rows, M.cols
        self.u = _identity_lists(self.m)
        self.v = _identity_lists(self.n)

    def swap_rows(self, i: int, j: int) -> None:
        if i != j:
            self.a[i], self.a[j] = self.a[j], self.a[i]
            self.u[i], self.u[j] = self.u[j], self.u[i]

    def swap_cols(self, i: int, j: int) -> None:
        if i != j:
            for row in self.a:
                row[i], row[j] = row[j], row[i]
            for row in self.v:
                row[i], row[j] = row[j], row[i]

    def add_row(self, target: int, source: int, factor: int) -> None:
        """row[target] += factor * row[source]"""
        self.a[target] = [x + factor * y for x, y in zip(self.a[target], self.a[source])]
        self.u[target] = [x + factor * y for x, y in zip(self.u[target], self.u[source])]

    def add_col(self, target: int, source: int, factor: int) -> None:
        """col[target] += factor * col[source]"""
        for row in self.a:
            row[target] += factor * row[source]
        for row in self.v:
            row[target] += factor * row[source]

    def negate_row(self, i: int) -> None:
        self.a[i] = [-x for x in self.a[i]]
        self.u[i] = [-x for x in self.u[i]]

    def find_pivot(self, t: int):
        best = None
        for i in range(t, self.m):
            for j in range(t, self.n):
                value = self.a[i][j]
                if value and (best is None or abs(value) < best[0]):
                    best = (abs(value), i, j)

        return best

    def reduce(self) -> None:
        t = 0
        while t < min(self.m, self.n):
            pivot = self.find_pivot(t)
            if pivot is None:
                break

            _, pi, pj = pivot
            self.swap_rows(t, pi)
            self.swap_cols(t, pj)
            p = self.a[t][t]

            changed = False
            for i in range(t + 1, self.m):
                q = self.a[i][t] // p
                if q:
                    self.add_row(i, t, -q)
                changed = changed or self.a[i][t] != 0

            for j in range(t + 1, self.n):
                q = self.a[t][j] // p
                if q:
                    self.add_col(j, t, -q)
                changed = changed or self.a[t][j] != 0

            if changed:
                continue

            offender = next(
                (i for i in range(t + 1, self.m) for j in range(t + 1, self.n) if self.a[i][j] % p),
                None,
            )
            if offender is not None:
                self.add_row(t, offender, 1)
                continue

            if p < 0:
                self.negate_row(t)
            t += 1


def smith_normal_form(M: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Returns (U, D, V) with U M V = D diagonal, d_1 | d_2 | ..., and U, V unimodular."""
    reducer = _SmithReducer(M)
    reducer.reduce()
    U, D, V = IntMatrix(reducer.u), IntMatrix(reducer.a), IntMatrix(reducer.v)

    if U @ M @ V != D:
        raise InvariantViolation("Smith reduction lost track of its transforms")

    return U, D, V


def invariant_factors(D: IntMatrix) -> List[int]:
    return [D[i, i] for i in range(min(D.rows, D.cols)) if D[i, i] != 0]


def integer_kernel_basis(M: IntMatrix) -> List[Tuple[int, ...]]:
    """Basis of the saturated lattice ker(M) in Z^cols."""
    _, D, V = smith_normal_form(M)
    r = len(invariant_factors(D))
    return [V.col(j) for j in range(r, V.cols)]


def complete_basis(columns: Sequence[Sequence[int]], n: int) -> IntMatrix:
    """Unimodular n x n matrix whose leading columns are the given primitive system."""
    if not columns:
        return IntMatrix.identity(n)

    k = len(columns)
    B = IntMatrix.from_columns(columns)
    if B.rows != n:
        raise CertificationError(f"Columns have length {B.rows}, expected {n}")

    U, D, V = smith_normal_form(B)
    factors = invariant_factors(D)
    if factors != [1] * k:
        raise CertificationError(f"Columns do not span a saturated rank-{k} sublattice: invariant factors {factors}")

    # B = U^-1 [I_k; 0] V^-1, so U^-1 diag(V^-1, I) starts with B.
    V_inv = inverse_unimodular(V)
    right = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i < k and j < k:
                right[i][j] = V_inv[i, j]
            else:
                right[i][j] = int(i == j)

    Q = inverse_unimodular(U) @ IntMatrix(right)
    if Q.submatrix(0, 0, col_stop=k) != B:
        raise InvariantViolation("Basis completion does not reproduce the given columns")

    return Q
