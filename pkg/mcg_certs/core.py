from functools import partial
from typing import (
    Any,
    Dict,
    List,
    Optional,
    Sequence,
)

import logging
import pandas as pd

from mcg_certs.algebra.matrix import IntMatrix
from mcg_certs.certificates.cover import (
    CoverRecord,
    ObstructionCert,
    SurjectivitySanity,
    base_map_lifts,
    build_cover_space,
    build_paper_map,
    build_torelli_variant,
    cover_report,
    normal_generation_obstruction,
    sp2_mod2_reachability,
)
from mcg_certs.certificates.lefschetz import (
    LowerBoundCert,
    lower_bound_certificate,
)
from mcg_certs.certificates.spread import (
    IntersectionTable,
    linearized_bound,
    load_intersection_table,
    paper_example_numbers,
    quantitative_restriction,
    upper_bound_eq2,
)
from mcg_certs.homology.curves import load_curve_table
from mcg_certs.homology.symplectic import (
    OrbitSumResult,
    orbit_sum_subspace,
    shift_matrix,
)
from mcg_certs.utils.constants import (
    DEFAULT_SEED,
    DEFAULT_SPREAD_OFFSET,
)
from mcg_certs.utils.errors import (
    CertificationError,
    FallbackRegime,
    InvariantViolation,
    UnconfirmedSpreadBound,
)
from mcg_certs.utils.sampling import (
    make_rng,
    planted_block_symplectic,
)
from mcg_certs.utils.serialization import matrix_to_record
from mcg_certs.utils.sweeps import run_sweep


logger = logging.getLogger(__name__)


SPREAD_COLUMNS = [
    "g",
    "int_sum",
    "offset",
    "available",
    "n_star",
    "bound",
    "linearized_bound",
    "automaton_width",
    "automaton_confirms",
]


def spread_row(g: int, int_sum: int, offset: int) -> Dict[str, Any]:
    """One row of the spread table; unavailable rows keep empty bound columns."""
    row: Dict[str, Any] = {"g": g, "int_sum": int_sum, "offset": offset}
    try:
        bound = upper_bound_eq2(g, int_sum, offset)
    except UnconfirmedSpreadBound as e:
        row.update(available=False, n_star=e.n_star, bound="", linearized_bound="", automaton_width=e.width, automaton_confirms=False)
        return row
    except FallbackRegime:
        row.update(available=False, n_star="", bound="", linearized_bound="", automaton_width="", automaton_confirms="")
        return row

    try:
        linear = str(linearized_bound(g, int_sum, offset))
    except CertificationError:
        linear = ""

    row.update(
        available=True,
        n_star=bound.n_star,
        bound=str(bound.bound),
        linearized_bound=linear,
        automaton_width=bound.automaton_width,
        automaton_confirms=bound.automaton_confirms,
    )
    return row


def _spread_row_from_tuple(args) -> Dict[str, Any]:
    return spread_row(*args)


def obstruction_for_degree(d: int) -> ObstructionCert:
    return normal_generation_obstruction(build_paper_map(d), d)


class CertificationEngine:
    """Runs the certification pipelines with one seed and one worker setting."""

    def __init__(self, seed: int = DEFAULT_SEED, workers: int = 1):
        self.seed = seed
        self.workers = workers

    def rng(self):
        return make_rng(self.seed)

    def planted_matrix(self, genus: int, k: int) -> IntMatrix:
        return planted_block_symplectic(self.rng(), genus, k)

    def witness(self, M: IntMatrix, k: int) -> LowerBoundCert:
        return lower_bound_certificate(M, k)

    def cover_records(self, degrees: Sequence[int], torelli_variant: bool = False) -> List[CoverRecord]:
        for d in degrees:
            if d < 2:
                raise CertificationError(f"Cover degree must be at least 2, got {d}")

        logger.info(f"Checking {len(degrees)} cover degree(s) from {degrees[0]} to {degrees[-1]}")
        records = run_sweep(
            partial(cover_report, torelli_variant=torelli_variant),
            list(degrees),
            workers=self.workers,
            desc="Cover degrees",
        )
        failed = [r.degree for r in records if not r.passed]
        if failed:
            logger.warning(f"Cover checks failed for degrees {failed}")

        return records

    def cover_matrices(self, degrees: Sequence[int], torelli_variant: bool = False) -> List[Dict[str, Any]]:
        """Lifted matrix per degree, rows and columns labelled by the cover basis."""
        records = []
        for d in degrees:
            cover = build_cover_space(d)
            M = build_torelli_variant(d) if torelli_variant else build_paper_map(d)
            records.append(dict(matrix_to_record(M, cover.basis_labels), d=d))

        return records

    def obstructions(self, degrees: Sequence[int]) -> List[ObstructionCert]:
        return run_sweep(obstruction_for_degree, list(degrees), workers=self.workers, desc="Obstructions")

    def spread_table(self, genus_start: int, genus_stop: int, int_sum: int, offset: int = DEFAULT_SPREAD_OFFSET) -> pd.DataFrame:
        items = [(g, int_sum, offset) for g in range(genus_start, genus_stop + 1)]
        rows = run_sweep(_spread_row_from_tuple, items, workers=self.workers, desc="Spread bounds")
        df = pd.DataFrame(rows, columns=SPREAD_COLUMNS)
        df["seed"] = self.seed

        unavailable = int((~df["available"]).sum())
        if unavailable:
            unconfirmed = sum(1 for row in rows if row["automaton_confirms"] is False)
            logger.warning(
                f"{unavailable} of {len(df)} genus values have no spread bound "
                f"({unavailable - unconfirmed} with floor < 1, {unconfirmed} unconfirmed by the spread automaton)"
            )

        return df

    def orbit_sum(self, n: int, k: int, vector: str = "e0") -> OrbitSumResult:
        """Orbit-sum device on the cyclic shift of 2^n coordinates."""
        size = 2 ** n
        if vector == "e0":
            c = [1] + [0] * (size - 1)
        elif vector == "ones":
            c = [1] * size
        else:
            raise CertificationError(f"Unknown orbit-sum start vector {vector!r}")

        return orbit_sum_subspace(shift_matrix(size), c, n, k)

    def surjectivity_sanity(self) -> SurjectivitySanity:
        return sp2_mod2_reachability()

    def paper_example_lines(self, genus: Optional[int] = None, table: Optional[IntersectionTable] = None) -> List[str]:
        table = table or load_intersection_table()
        numbers = paper_example_numbers(table)

        problems = numbers.mismatches(load_curve_table())
        if problems:
            raise InvariantViolation("Curve table disagrees with the intersection calculus: " + "; ".join(problems))

        if not base_map_lifts():
            raise InvariantViolation("Base map does not preserve i(., alpha)")

        S = numbers.int_sum
        offset = DEFAULT_SPREAD_OFFSET
        numerator, shift = 2 * S, offset + S
        lines = [
            f"i(xi, beta) = {numbers.i_xi_beta}",
            f"i(xi, alpha) = {numbers.i_xi_alpha}",
            f"i(alpha, beta) = {numbers.i_alpha_beta}",
            "lambda = T_xi(beta), phi = T_lambda T_beta^-1",
            f"i(lambda, beta) = i(xi, beta)^2 = {numbers.i_lambda_beta}",
            f"i(lambda, alpha) = i(xi, beta) i(xi, alpha) = {numbers.i_lambda_alpha}",
            f"i(phi.alpha, alpha) = i(lambda, alpha)^2 = {numbers.i_phialpha_alpha}",
            f"i(phi.beta, alpha) = {numbers.i_phibeta_alpha}",
            "  = i(lambda, beta) i(lambda, alpha) (product formula asserted for this configuration)",
            f"S = i(phi.beta, alpha) + i(phi.alpha, alpha) = {S}",
            f"l_C(f_g) <= 2/floor((g-{offset})/{S}) <= {numerator}/(g-{shift})",
            f"bound(g) = {numerator}/(g-{shift}) for g > {shift}",
            "f_g is trivial on H_1(S_g; Z/(g-1)) and is not a normal generator,",
            f"so any C forcing normal generation below C/g satisfies C <= {numerator}",
        ]
        if genus is not None:
            lines.append(f"bound({genus}) = {quantitative_restriction(genus, S)}")
            try:
                lines.append(f"floor bound({genus}) = {upper_bound_eq2(genus, S, offset).bound}")
            except FallbackRegime:
                lines.append(f"floor bound({genus}) = unavailable")

        return lines

    def paper_example_record(self, genus: Optional[int] = None) -> Dict[str, Any]:
        numbers = paper_example_numbers()
        record = numbers.to_record()
        record["bound"] = f"{2 * numbers.int_sum}/(g-{DEFAULT_SPREAD_OFFSET + numbers.int_sum})"
        if genus is not None:
            record["genus"] = genus
            record["bound_at_genus"] = quantitative_restriction(genus, numbers.int_sum)

        return record
