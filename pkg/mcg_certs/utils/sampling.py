"""
Seeded generators for the property sweeps.

Every function takes a numpy Generator so that one seed reproduces a whole corpus.
"""

from typing import (
    List,
    Tuple,
)

import logging
import numpy as np

from mcg_certs.algebra.matrix import (
    IntMatrix,
    inverse_unimodular,
)
from mcg_certs.homology.curves import (
    BaseCurve,
    CurveTable,
    TwistWord,
)
from mcg_certs.homology.symplectic import (
    standard_space,
    transvection,
)
from mcg_certs.utils.errors import CertificationError


logger = logging.getLogger(__name__)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def _ints(rng: np.random.Generator, low: int, high: int, size) -> List[int]:
    """Uniform integers in [low, high] as Python ints."""
    return [int(x) for x in np.ravel(rng.integers(low, high + 1, size=size))]


def random_int_matrix(rng: np.random.Generator, size: int, low: int = -5, high: int = 5) -> IntMatrix:
    values = _ints(rng, low, high, size * size)
    return IntMatrix([values[i * size:(i + 1) * size] for i in range(size)])


def random_sl_matrix(
    rng: np.random.Generator,
    m: int,
    max_factors: int = 20,
    low: int = -2,
    high: int = 2,
) -> IntMatrix:
    """Product of at most `max_factors` elementary matrices I + a E_ij, i != j."""
    result = IntMatrix.identity(m)
    if m < 2:
        return result

    count = int(rng.integers(0, max_factors + 1))
    for _ in range(count):
        i, j = (int(x) for x in rng.choice(m, size=2, replace=False))
        a = int(rng.integers(low, high + 1))
        rows = IntMatrix.identity(m).to_lists()
        rows[i][j] = a
        result = result @ IntMatrix(rows)

    return result


def _nonzero_exponent(rng: np.random.Generator, bound: int) -> int:
    value = int(rng.integers(1, bound + 1))
    return value if rng.random() < 0.5 else -value


def random_twist_word(
    rng: np.random.Generator,
    genus: int,
    max_length: int = 8,
    low: int = -3,
    high: int = 3,
) -> Tuple[CurveTable, TwistWord]:
    """Random curve classes in [low, high] and a word over them."""
    length = int(rng.integers(0, max_length + 1))
    curves = [BaseCurve(id=f"c{i}", homology=tuple(_ints(rng, low, high, 2 * genus))) for i in range(max(length, 1))]
    letters = tuple((f"c{i}", _nonzero_exponent(rng, 3)) for i in range(length))
    return CurveTable(curves), TwistWord(letters)


def random_block_symplectic(
    rng: np.random.Generator,
    genus: int,
    first_pair: int = 0,
    factors: int = 4,
    low: int = -1,
    high: int = 1,
) -> IntMatrix:
    """Product of transvections along classes supported on pairs first_pair..genus-1."""
    space = standard_space(genus)
    result = IntMatrix.identity(2 * genus)
    if first_pair >= genus:
        return result

    for _ in range(factors):
        c = [0] * (2 * first_pair) + _ints(rng, low, high, 2 * (genus - first_pair))
        result = result @ transvection(c, _nonzero_exponent(rng, 1), space)

    return result


def random_symplectic(rng: np.random.Generator, genus: int, factors: int = 4) -> IntMatrix:
    return random_block_symplectic(rng, genus, 0, factors)


def planted_block_symplectic(rng: np.random.Generator, genus: int, k: int) -> IntMatrix:
    """A symplectic matrix whose fixed subspace has dimension at least k.

    The first ceil(k/2) hyperbolic pairs are fixed pointwise, the rest carries a
    random product of transvections, and the result is conjugated by a random
    symplectic change of basis.
    """
    if not 0 <= k <= 2 * genus:
        raise CertificationError(f"Need 0 <= k <= 2g, got k={k}, g={genus}")

    fixed_pairs = (k + 1) // 2
    block = random_block_symplectic(rng, genus, fixed_pairs, factors=int(rng.integers(1, 7)))
    P = random_symplectic(rng, genus, factors=3)
    return P @ block @ inverse_unimodular(P)
