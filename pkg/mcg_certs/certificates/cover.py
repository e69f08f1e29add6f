"""
Cyclic-cover homology model
---------------------------

The degree-d cyclic cover of the genus-2 surface dual to i(., alpha) mod d has
genus d + 1. Its first homology is modelled in the basis

    gamma_0 .. gamma_{d-1}, delta_0 .. delta_{d-1}, eta, alpha

(block-local lifts of gamma and delta, the connected preimage of eta and one
chosen component of the preimage of alpha), with i(gamma_j, delta_j) = 1,
i(eta, alpha) = 1 and all other basis pairings zero. The deck transformation
shifts the blocks cyclically and fixes eta and alpha.

Lifted maps are assembled in this basis from two kinds of factor: lifts of
twists along separating curves (each lift is separating, so homologically
trivial) and the lift of a twist along a curve homologous to alpha (d
components, each homologous to the chosen alpha).
"""

from collections import Counter
from dataclasses import dataclass
from typing import (
    Any,
    Dict,
    List,
    Optional,
    Sequence,
    Set,
    Tuple,
)

import logging

from mcg_certs.algebra.determinant import det_bareiss
from mcg_certs.algebra.matrix import (
    IntMatrix,
    mat_pow,
    reduce_mod,
)
from mcg_certs.certificates.base import BaseCertificate
from mcg_certs.homology.curves import (
    CurveTable,
    TwistWord,
    evaluate_twist_word,
    load_curve_table,
)
from mcg_certs.homology.symplectic import (
    IntersectionSpace,
    is_symplectic,
    m_value,
    preserves_form,
    preserves_intersection_class,
    standard_space,
)
from mcg_certs.utils.constants import (
    COVER_BASIS_ALPHA,
    COVER_BASIS_DELTA,
    COVER_BASIS_ETA,
    COVER_BASIS_GAMMA,
    LIFT_ALPHA_PREIMAGE,
    LIFT_SEPARATING,
    SP2_MAX_WORD_LENGTH,
    SP2_MOD2_ORDER,
    SURJECTIVITY_DEPENDENCY,
)
from mcg_certs.utils.errors import (
    CertificationError,
    InvariantViolation,
    NotTrivialModError,
    ShapeError,
)


logger = logging.getLogger(__name__)

# f = T_beta T_{phi beta}^-1 T_{phi alpha}^-1 and its Torelli modification.
PAPER_WORD = TwistWord((("beta", 1), ("phi_beta", -1), ("phi_alpha", -1)))
TORELLI_WORD = TwistWord((("beta", 1), ("phi_beta", -1)))

PAPER_LIFT = ((LIFT_SEPARATING, 1), (LIFT_SEPARATING, -1), (LIFT_ALPHA_PREIMAGE, -1))
TORELLI_LIFT = ((LIFT_SEPARATING, 1), (LIFT_SEPARATING, -1))


def cover_genus(d: int) -> int:
    return d + 1


def degree_for_genus(g: int) -> int:
    """Degree of the cover that has genus g."""
    if g < 3:
        raise CertificationError(f"Cover genus must be at least 3, got {g}")

    return g - 1


def _require_degree(d: int) -> None:
    if d < 2:
        raise CertificationError(f"Cover degree must be at least 2, got {d}")


@dataclass(frozen=True)
class CoverModel:
    degree: int
    basis_labels: Tuple[str, ...]
    form: IntMatrix
    deck: IntMatrix

    @property
    def genus(self) -> int:
        return cover_genus(self.degree)

    @property
    def rank(self) -> int:
        return 2 * self.degree + 2

    def gamma(self, j: int) -> int:
        return j % self.degree

    def delta(self, j: int) -> int:
        return self.degree + j % self.degree

    @property
    def eta(self) -> int:
        return 2 * self.degree

    @property
    def alpha(self) -> int:
        return 2 * self.degree + 1

    def unit(self, index: int) -> Tuple[int, ...]:
        return tuple(int(i == index) for i in range(self.rank))

    def pairing_row(self, c: Sequence[int]) -> Tuple[int, ...]:
        """Row of i(basis_i, c) for every basis vector."""
        return self.form.apply(c)


def build_cover_space(d: int) -> CoverModel:
    _require_degree(d)
    n = 2 * d + 2
    form = [[0] * n for _ in range(n)]
    deck = [[0] * n for _ in range(n)]

    for j in range(d):
        form[j][d + j] = 1
        form[d + j][j] = -1
        # h sends gamma_j, delta_j to gamma_{j+1}, delta_{j+1}
        deck[(j + 1) % d][j] = 1
        deck[d + (j + 1) % d][d + j] = 1

    form[2 * d][2 * d + 1] = 1
    form[2 * d + 1][2 * d] = -1
    deck[2 * d][2 * d] = 1
    deck[2 * d + 1][2 * d + 1] = 1

    labels = (
        [f"{COVER_BASIS_GAMMA}_{j}" for j in range(d)]
        + [f"{COVER_BASIS_DELTA}_{j}" for j in range(d)]
        + [COVER_BASIS_ETA, COVER_BASIS_ALPHA]
    )
    return CoverModel(degree=d, basis_labels=tuple(labels), form=IntMatrix(form), deck=IntMatrix(deck))


def check_cover_space(cover: CoverModel) -> None:
    """Raises InvariantViolation unless the form and deck action are consistent."""
    F = cover.form
    if F.T != -F:
        raise InvariantViolation("Cover intersection form is not antisymmetric")

    if det_bareiss(F) != 1:
        raise InvariantViolation("Cover intersection form is not unimodular")

    if not preserves_form(cover.deck, F):
        raise InvariantViolation("Deck transformation does not preserve the cover form")

    if mat_pow(cover.deck, cover.degree) != IntMatrix.identity(cover.rank):
        raise InvariantViolation(f"Deck transformation does not have order {cover.degree}")


@dataclass(frozen=True)
class LiftedMultiTwist:
    """Simultaneous twist power along the components of a lifted curve."""

    components: Tuple[Tuple[Tuple[int, ...], Tuple[int, ...]], ...]
    exponent: int

    def __post_init__(self):
        if self.exponent == 0:
            raise CertificationError("Lifted twist exponent must be nonzero")

    def validate(self, cover: CoverModel) -> None:
        for cls, pairing in self.components:
            if len(cls) != cover.rank or len(pairing) != cover.rank:
                raise ShapeError(f"Component vectors must have length {cover.rank}")
            if cover.pairing_row(cls) != tuple(pairing):
                raise CertificationError(f"Pairing row {pairing} disagrees with the cover form for class {cls}")


def alpha_preimage_twist(cover: CoverModel, exponent: int) -> LiftedMultiTwist:
    """Twist along all d components of the preimage of a curve homologous to alpha."""
    cls = cover.unit(cover.alpha)
    component = (cls, cover.pairing_row(cls))
    return LiftedMultiTwist(components=(component,) * cover.degree, exponent=exponent)


def lift_separating_twist(d: int, exponent: int, separating: bool = True) -> IntMatrix:
    """Every lift of a separating curve is separating, so the lifted twist acts trivially."""
    _require_degree(d)
    if not separating:
        raise CertificationError("Only separating curves lift to homologically trivial twists")

    if exponent == 0:
        raise CertificationError("Lifted twist exponent must be nonzero")

    return IntMatrix.identity(2 * d + 2)


def lift_multicurve_transvection(t: LiftedMultiTwist, cover: CoverModel) -> IntMatrix:
    t.validate(cover)
    result = IntMatrix.identity(cover.rank)

    # Components with equal class commute and their transvections add up, since
    # i(c, c) = 0 makes c p^T square to zero.
    for (cls, pairing), count in Counter(t.components).items():
        if not any(cls):
            continue
        # R (I + e c p^T) = R + e (R c) p^T
        result = result + IntMatrix.outer(result.apply(cls), pairing) * (t.exponent * count)

    if not is_symplectic(result, cover):
        raise InvariantViolation("Lifted multitwist does not preserve the cover form")

    return result


def lifted_word_matrix(d: int, letters: Sequence[Tuple[str, int]]) -> IntMatrix:
    """Product of lifted factors, written left to right (the rightmost acts first)."""
    cover = build_cover_space(d)
    result = IntMatrix.identity(cover.rank)
    for kind, exponent in letters:
        if kind == LIFT_SEPARATING:
            factor = lift_separating_twist(d, exponent)
        elif kind == LIFT_ALPHA_PREIMAGE:
            factor = lift_multicurve_transvection(alpha_preimage_twist(cover, exponent), cover)
        else:
            raise CertificationError(f"Unknown lift kind {kind!r}")
        result = result @ factor

    return result


def build_paper_map(d: int) -> IntMatrix:
    """Lift of T_beta T_{phi beta}^-1 T_{phi alpha}^-1 in the translated basis."""
    return lifted_word_matrix(d, PAPER_LIFT)


def build_torelli_variant(d: int) -> IntMatrix:
    """Lift of T_beta T_{phi beta}^-1, which is Torelli."""
    return lifted_word_matrix(d, TORELLI_LIFT)


def deck_invariant(M: IntMatrix, cover: CoverModel) -> bool:
    """h M h^-1 = M; h is a permutation so h^-1 = h^T."""
    if M.shape != (cover.rank, cover.rank):
        raise ShapeError(f"Matrix of shape {M.shape} does not act on the degree-{cover.degree} cover")

    return cover.deck @ M @ cover.deck.T == M


def base_map_lifts(curves: Optional[CurveTable] = None, word: TwistWord = PAPER_WORD) -> bool:
    """Whether the base map preserves i(., alpha) and so lifts to every cyclic cover dual to alpha."""
    curves = curves or load_curve_table()
    space = standard_space(curves.genus)
    M = evaluate_twist_word(word, curves, space)
    return preserves_intersection_class(M, curves["alpha"].homology, space)


def _first_nontrivial_entry(M: IntMatrix, d: int) -> Optional[Tuple[Tuple[int, int], int]]:
    reduced = reduce_mod(M, d)
    for i in range(M.rows):
        for j in range(M.cols):
            if reduced[i, j] != int(i == j):
                return (i, j), reduced[i, j]

    return None


@dataclass(frozen=True)
class ObstructionCert(BaseCertificate):
    degree: int
    matrix_mod_d_is_identity: bool
    statement: str
    depends_on: Tuple[str, ...] = (SURJECTIVITY_DEPENDENCY,)

    kind = "obstruction"

    def __post_init__(self):
        if not self.matrix_mod_d_is_identity:
            raise InvariantViolation("Obstruction certificate requires a trivial reduction")

    def to_record(self) -> Dict[str, Any]:
        return {
            "degree": self.degree,
            "identity_mod_d": self.matrix_mod_d_is_identity,
            "depends_on": list(self.depends_on),
            "statement": self.statement,
        }

    def summary_lines(self) -> List[str]:
        return [
            f"degree = {self.degree}: matrix is the identity mod {self.degree}",
            self.statement,
            "depends on: " + ", ".join(self.depends_on),
        ]


def _obstruction_statement(d: int) -> str:
    return (
        f"The action is trivial on H_1 with Z/{d} coefficients. If Sp(2g, Z) -> Sp(2g, Z/{d}) is "
        f"surjective, the normal closure lies in the proper kernel of the reduction, so the map "
        f"is not a normal generator."
    )


def _acting_space(M: IntMatrix, d: int, space: Optional[IntersectionSpace]) -> IntersectionSpace:
    if space is not None:
        return space

    if M.rows == 2 * d + 2:
        cover = build_cover_space(d)
        if is_symplectic(M, cover):
            return cover

    return standard_space(M.rows // 2)


def normal_generation_obstruction(
    M: IntMatrix,
    d: int,
    space: Optional[IntersectionSpace] = None,
) -> ObstructionCert:
    """Certificate that M is the identity mod d.

    Without an explicit space the matrix may be symplectic either for the
    degree-d cover form (when its size is 2d + 2) or for the standard form.
    """
    _require_degree(d)
    if not M.is_square or M.rows % 2:
        raise ShapeError(f"Expected an even square matrix, got {M.rows}x{M.cols}")

    acting = _acting_space(M, d, space)
    if not is_symplectic(M, acting):
        raise CertificationError("Normal-generation obstruction requires a symplectic matrix")

    offending = _first_nontrivial_entry(M, d)
    if offending is not None:
        entry, value = offending
        raise NotTrivialModError(d, entry, value)

    return ObstructionCert(degree=d, matrix_mod_d_is_identity=True, statement=_obstruction_statement(d))


@dataclass(frozen=True)
class CoverRecord:
    degree: int
    cover_genus: int
    m_value: int
    m_expected: int
    identity_mod_d: bool
    deck_invariant: bool
    symplectic: bool
    torelli_variant: bool = False

    @property
    def passed(self) -> bool:
        return (
            self.m_value == self.m_expected
            and self.identity_mod_d
            and self.deck_invariant
            and self.symplectic
        )

    def to_record(self) -> Dict[str, Any]:
        return {
            "d": self.degree,
            "cover_genus": self.cover_genus,
            "m_value": self.m_value,
            "m_expected": self.m_expected,
            "identity_mod_d": self.identity_mod_d,
            "deck_invariant": self.deck_invariant,
            "symplectic": self.symplectic,
            "torelli_variant": self.torelli_variant,
            "passed": self.passed,
        }


def cover_report(d: int, torelli_variant: bool = False) -> CoverRecord:
    """Checks one degree: m = 2d + 1 (2d + 2 for the Torelli variant), i.e. 2 * genus - 1."""
    cover = build_cover_space(d)
    check_cover_space(cover)

    M = build_torelli_variant(d) if torelli_variant else build_paper_map(d)
    symplectic = is_symplectic(M, cover)
    record = CoverRecord(
        degree=d,
        cover_genus=cover.genus,
        m_value=m_value(M, cover) if symplectic else -1,
        m_expected=cover.rank if torelli_variant else cover.rank - 1,
        identity_mod_d=_first_nontrivial_entry(M, d) is None,
        deck_invariant=deck_invariant(M, cover),
        symplectic=symplectic,
        torelli_variant=torelli_variant,
    )
    if not record.passed:
        logger.warning(f"Degree {d} failed its cover checks: {record.to_record()}")

    return record


_SP2_GENERATORS = (
    ((0, -1), (1, 0)),
    ((1, 1), (0, 1)),
)


def _mul2(a, b, n: int):
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(2)) % n for j in range(2))
        for i in range(2)
    )


def sl2_mod2_elements() -> Set[Tuple[Tuple[int, int], Tuple[int, int]]]:
    """All 2x2 matrices over Z/2 with determinant 1."""
    found = set()
    for a in range(2):
        for b in range(2):
            for c in range(2):
                for e in range(2):
                    if (a * e - b * c) % 2 == 1:
                        found.add(((a, b), (c, e)))

    return found


@dataclass(frozen=True)
class SurjectivitySanity:
    reached: int
    expected: int
    max_word_length: int
    first_length: Dict[str, int]

    @property
    def passed(self) -> bool:
        return self.reached == self.expected

    def to_record(self) -> Dict[str, Any]:
        return {
            "reached": self.reached,
            "expected": self.expected,
            "max_word_length": self.max_word_length,
            "first_length": dict(self.first_length),
            "passed": self.passed,
        }


def sp2_mod2_reachability(max_length: int = SP2_MAX_WORD_LENGTH) -> SurjectivitySanity:
    """Breadth-first walk over words in the standard SL(2, Z) generators, reduced mod 2."""
    identity = ((1, 0), (0, 1))
    gens = [tuple(tuple(x % 2 for x in row) for row in g) for g in _SP2_GENERATORS]
    first_length = {identity: 0}
    frontier = [identity]
    for length in range(1, max_length + 1):
        next_frontier = []
        for element in frontier:
            for gen in gens:
                product = _mul2(element, gen, 2)
                if product not in first_length:
                    first_length[product] = length
                    next_frontier.append(product)
        frontier = next_frontier

    target = sl2_mod2_elements()
    if len(target) != SP2_MOD2_ORDER:
        raise InvariantViolation(f"SL(2, Z/2) enumeration found {len(target)} elements")

    reached = len(set(first_length) & target)
    labels = {f"{e[0][0]}{e[0][1]}{e[1][0]}{e[1][1]}": n for e, n in sorted(first_length.items())}
    return SurjectivitySanity(reached=reached, expected=len(target), max_word_length=max_length, first_length=labels)


def sp2_mod2_surjectivity_sanity() -> bool:
    return sp2_mod2_reachability().passed
