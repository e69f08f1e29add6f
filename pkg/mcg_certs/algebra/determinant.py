"""
Determinants by independent routes
----------------------------------

Three exact paths to det(M) for a square integer matrix:

1. det_bareiss: fraction-free Gaussian elimination. Every division is exact, so
   intermediate values stay integers.
2. det_from_traces: the partition identity

       (-1)^m det A = sum over c_1 + 2 c_2 + ... + m c_m = m of
                      prod_i (1 / c_i!) (-Tr(A^i) / i)^(c_i)

   evaluated literally with exact rationals. The number of terms is the
   partition number of m, so the literal form is only used up to
   MAX_LITERAL_PARTITION_SIZE; larger sizes go through path 3.
3. newton_elementary: Newton's identities k e_k = sum_i (-1)^(i-1) e_(k-i) p_i
   turn the power sums p_i = Tr(A^i) into the elementary symmetric functions of
   the eigenvalues; e_m is the determinant.

The three agree on every integer matrix; tests use each as the oracle of the others.
"""

from fractions import Fraction
from math import factorial
from typing import List

import logging
import numpy as np

from sympy.utilities.iterables import partitions

from mcg_certs.algebra.matrix import (
    IntMatrix,
    TraceSequence,
    check_integral,
    trace_powers,
)
from mcg_certs.utils.constants import MAX_LITERAL_PARTITION_SIZE
from mcg_certs.utils.errors import (
    CertificationError,
    ShapeError,
)


logger = logging.getLogger(__name__)


def det_bareiss(M: IntMatrix) -> int:
    if not M.is_square:
        raise ShapeError(f"Determinant requires a square matrix, got {M.rows}x{M.cols}")

    n = M.rows
    if n == 0:
        return 1

    a = np.array(M.array, dtype=object)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k, k] == 0:
            below = np.flatnonzero(a[k + 1:, k] != 0)
            if below.size == 0:
                return 0

            swap = k + 1 + int(below[0])
            a[[k, swap]] = a[[swap, k]]
            sign = -sign

        pivot = a[k, k]
        # every division here is exact
        a[k + 1:, k + 1:] = (pivot * a[k + 1:, k + 1:] - np.outer(a[k + 1:, k], a[k, k + 1:])) // prev
        prev = pivot

    return sign * int(a[n - 1, n - 1])


def _partition_sum(traces: TraceSequence, m: int) -> Fraction:
    total = Fraction(0)
    # partitions() yields {part i: multiplicity c_i} and reuses the dict between steps
    for multiplicities in partitions(m):
        term = Fraction(1)
        for i, c_i in multiplicities.items():
            term *= Fraction(-traces.at(i), i) ** c_i / factorial(c_i)
        total += term

    return total


def det_from_traces(M: IntMatrix) -> int:
    if not M.is_square:
        raise ShapeError(f"Determinant requires a square matrix, got {M.rows}x{M.cols}")

    m = M.rows
    if m < 1:
        raise CertificationError("Trace determinant needs a matrix of size at least 1")

    traces = trace_powers(M, m)
    if m > MAX_LITERAL_PARTITION_SIZE:
        logger.debug(f"Size {m} exceeds the literal partition limit; using Newton's identities")
        return newton_elementary(traces)[-1]

    signed = _partition_sum(traces, m)
    return check_integral((-1) ** m * signed, "Partition-sum determinant")


def newton_elementary(traces: TraceSequence) -> List[int]:
    """Elementary symmetric functions e_1..e_m of the eigenvalues from p_1..p_m."""
    m = traces.jmax
    e = [Fraction(1)]
    for k in range(1, m + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * traces.at(i)
        e.append(acc / k)

    for k, value in enumerate(e[1:], start=1):
        if value.denominator != 1:
            raise CertificationError(f"e_{k} = {value} is not an integer; the trace sequence is corrupted")

    return [int(value) for value in e[1:]]
