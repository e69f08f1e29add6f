from dataclasses import (
    dataclass,
    replace,
)
from fractions import Fraction
from typing import (
    Any,
    Dict,
    Iterable,
    List,
    Optional,
    Set,
    Tuple,
)

import logging

import sympy

from mcg_certs.certificates.base import BaseCertificate
from mcg_certs.homology.curves import CurveTable
from mcg_certs.utils import symbolic
from mcg_certs.utils.config import (
    IntersectionEntry,
    load_base_intersections,
)
from mcg_certs.utils.constants import (
    APT_EXP_POWER,
    APT_RATIONAL_FACTOR,
    DEFAULT_SPREAD_OFFSET,
    PAPER_INT_SUM,
    SPREAD_OFFSETS,
)
from mcg_certs.utils.errors import (
    CertificationError,
    FallbackRegime,
    UnconfirmedSpreadBound,
)


logger = logging.getLogger(__name__)


class IntersectionTable:
    """Symmetric partial table of geometric intersection numbers."""

    def __init__(self, entries: Iterable[IntersectionEntry] = ()):
        self._values: Dict[Tuple[str, str], int] = {}
        self._provenance: Dict[Tuple[str, str], str] = {}
        for entry in entries:
            self.set(entry.first, entry.second, entry.value, entry.provenance)

    @staticmethod
    def _key(first: str, second: str) -> Tuple[str, str]:
        return (first, second) if first <= second else (second, first)

    def set(self, first: str, second: str, value: int, provenance: str = "") -> None:
        if value < 0:
            raise CertificationError(f"Intersection numbers are non-negative, got i({first}, {second}) = {value}")

        if first == second and value != 0:
            raise CertificationError(f"i({first}, {first}) must be 0, got {value}")

        key = self._key(first, second)
        if key in self._values and self._values[key] != value:
            raise CertificationError(f"Conflicting values for i({first}, {second}): {self._values[key]} and {value}")

        self._values[key] = value
        self._provenance[key] = provenance

    def get(self, first: str, second: str) -> int:
        if first == second:
            return 0

        try:
            return self._values[self._key(first, second)]
        except KeyError:
            raise CertificationError(f"No intersection number recorded for ({first}, {second})")

    def provenance(self, first: str, second: str) -> str:
        return self._provenance.get(self._key(first, second), "")

    def __len__(self) -> int:
        return len(self._values)


def load_intersection_table(path: Optional[str] = None) -> IntersectionTable:
    return IntersectionTable(load_base_intersections(path))


def twist_self_intersection(i_ab: int) -> int:
    """i(T_a b, b) = i(a, b)^2"""
    if i_ab < 0:
        raise CertificationError(f"Intersection numbers are non-negative, got {i_ab}")

    return i_ab * i_ab


def twist_cross_intersection(i_ab: int, i_ac: int) -> int:
    """i(T_a b, c) taken as i(a, b) i(a, c) for the shipped configuration.

    This product form is asserted for the fixed picture, not derived from a
    general positioning argument; results carry that flag.
    """
    if i_ab < 0 or i_ac < 0:
        raise CertificationError(f"Intersection numbers are non-negative, got {i_ab}, {i_ac}")

    return i_ab * i_ac


@dataclass(frozen=True)
class PaperExampleNumbers:
    i_xi_beta: int
    i_xi_alpha: int
    i_alpha_beta: int
    i_lambda_beta: int
    i_lambda_alpha: int
    i_phialpha_alpha: int
    i_phibeta_alpha: int
    cross_formula_asserted: bool = True

    @property
    def int_sum(self) -> int:
        return self.i_phialpha_alpha + self.i_phibeta_alpha

    def to_record(self) -> Dict[str, Any]:
        return {
            "i_xi_beta": self.i_xi_beta,
            "i_xi_alpha": self.i_xi_alpha,
            "i_alpha_beta": self.i_alpha_beta,
            "i_lambda_beta": self.i_lambda_beta,
            "i_lambda_alpha": self.i_lambda_alpha,
            "i_phialpha_alpha": self.i_phialpha_alpha,
            "i_phibeta_alpha": self.i_phibeta_alpha,
            "int_sum": self.int_sum,
            "cross_formula_asserted": self.cross_formula_asserted,
        }

    def mismatches(self, curves: CurveTable) -> List[str]:
        """Differences against the geometric entries of a curve table."""
        expected = {
            ("lambda", "beta"): self.i_lambda_beta,
            ("lambda", "alpha"): self.i_lambda_alpha,
            ("phi_alpha", "alpha"): self.i_phialpha_alpha,
            ("phi_beta", "alpha"): self.i_phibeta_alpha,
        }
        problems = []
        for (first, second), value in expected.items():
            if first not in curves or second not in curves:
                continue
            recorded = curves.geometric(first, second)
            if recorded is not None and recorded != value:
                problems.append(f"i({first}, {second}): table has {recorded}, calculus gives {value}")

        return problems


def paper_example_numbers(table: Optional[IntersectionTable] = None) -> PaperExampleNumbers:
    """lambda = T_xi beta, phi = T_lambda T_beta^-1, so phi alpha = T_lambda alpha and phi beta = T_lambda beta."""
    table = table or load_intersection_table()
    i_xi_beta = table.get("xi", "beta")
    i_xi_alpha = table.get("xi", "alpha")

    i_lambda_beta = twist_self_intersection(i_xi_beta)
    i_lambda_alpha = twist_cross_intersection(i_xi_beta, i_xi_alpha)
    return PaperExampleNumbers(
        i_xi_beta=i_xi_beta,
        i_xi_alpha=i_xi_alpha,
        i_alpha_beta=table.get("alpha", "beta"),
        i_lambda_beta=i_lambda_beta,
        i_lambda_alpha=i_lambda_alpha,
        i_phialpha_alpha=twist_self_intersection(i_lambda_alpha),
        i_phibeta_alpha=twist_cross_intersection(i_lambda_beta, i_lambda_alpha),
    )


@dataclass(frozen=True)
class SpreadState:
    """Support of the iterated image of the chosen lift, as blocks -left..right mod degree."""

    degree: int
    left: int = 0
    right: int = 0
    iteration: int = 0

    def __post_init__(self):
        if self.degree < 1:
            raise CertificationError(f"Degree must be positive, got {self.degree}")

        if self.left < 0 or self.right < 0:
            raise CertificationError("Support offsets must be non-negative")

    @property
    def width(self) -> int:
        return min(self.left + self.right + 1, self.degree)

    @property
    def saturated(self) -> bool:
        return self.width == self.degree

    @property
    def misses_block(self) -> bool:
        return not self.saturated

    def blocks(self) -> Set[int]:
        if self.saturated:
            return set(range(self.degree))

        return {j % self.degree for j in range(-self.left, self.right + 1)}


def half_growth(int_sum: int) -> int:
    """Blocks gained on each side per iteration; odd sums round up."""
    return (int_sum + 1) // 2


def spread_step(s: SpreadState, half_growth: int) -> SpreadState:
    if half_growth < 0:
        raise CertificationError(f"half_growth must be non-negative, got {half_growth}")

    if s.saturated:
        return replace(s, iteration=s.iteration + 1)

    return replace(s, left=s.left + half_growth, right=s.right + half_growth, iteration=s.iteration + 1)


def run_spread(degree: int, growth: int, steps: int) -> SpreadState:
    state = SpreadState(degree=degree)
    for _ in range(steps):
        state = spread_step(state, growth)

    return state


def _require_offset(offset: int) -> None:
    if offset not in SPREAD_OFFSETS:
        raise CertificationError(f"offset must be one of {SPREAD_OFFSETS}, got {offset}")


def linearized_bound(g: int, int_sum: int, offset: int = DEFAULT_SPREAD_OFFSET) -> Fraction:
    """2S / (g - offset - S), the relaxation of 2 / floor((g - offset) / S)."""
    _require_offset(offset)
    denominator = g - offset - int_sum
    if denominator <= 0:
        raise CertificationError(f"Linearized bound needs g > {offset + int_sum}, got g = {g}")

    return Fraction(2 * int_sum, denominator)


def quantitative_restriction(g: int, int_sum: int = PAPER_INT_SUM) -> Fraction:
    """1152 / (g - 579) for the shipped configuration."""
    shift = DEFAULT_SPREAD_OFFSET + int_sum
    if g <= shift:
        raise CertificationError(f"Quantitative restriction needs g > {shift}, got g = {g}")

    return Fraction(2 * int_sum, g - shift)


@dataclass(frozen=True)
class SpreadBound(BaseCertificate):
    genus_param: int
    int_sum: int
    offset: int
    n_star: int
    bound: Fraction
    automaton_width: int
    automaton_confirms: bool

    kind = "spread_bound"

    def to_record(self) -> Dict[str, Any]:
        return {
            "genus_param": self.genus_param,
            "int_sum": self.int_sum,
            "offset": self.offset,
            "n_star": self.n_star,
            "bound": self.bound,
            "automaton_width": self.automaton_width,
            "automaton_confirms": self.automaton_confirms,
        }

    def summary_lines(self) -> List[str]:
        return [
            f"g = {self.genus_param}, S = {self.int_sum}, offset = {self.offset}",
            f"n* = {self.n_star}, bound = {self.bound}",
            f"support width after n* steps = {self.automaton_width} (misses a block: {self.automaton_confirms})",
        ]


def upper_bound_eq2(g: int, int_sum: int, offset: int = DEFAULT_SPREAD_OFFSET) -> SpreadBound:
    """2 / floor((g - offset) / S), cross-checked against the spread automaton on the degree-g cover."""
    _require_offset(offset)
    if int_sum < 1:
        raise CertificationError(f"Intersection sum must be positive, got {int_sum}")

    n_star = (g - offset) // int_sum
    if n_star < 1:
        raise FallbackRegime(f"floor(({g} - {offset}) / {int_sum}) < 1: bound unavailable at g = {g}")

    state = run_spread(g, half_growth(int_sum), n_star)
    if state.saturated:
        raise UnconfirmedSpreadBound(
            f"Spread automaton saturates the degree-{g} cover after {n_star} steps: bound unconfirmed at g = {g}",
            n_star=n_star,
            width=state.width,
        )

    return SpreadBound(
        genus_param=g,
        int_sum=int_sum,
        offset=offset,
        n_star=n_star,
        bound=Fraction(2, n_star),
        automaton_width=state.width,
        automaton_confirms=state.misses_block,
    )


@dataclass(frozen=True)
class AptBound:
    coefficient: Fraction
    expression: sympy.Expr

    @property
    def decimal(self) -> str:
        return symbolic.decimal(self.expression)

    def to_record(self) -> Dict[str, Any]:
        return {
            "coefficient": self.coefficient,
            "expression": symbolic.render(self.expression),
            "decimal": self.decimal,
        }


def apt_lower_bound(ell_base: Fraction, g: int) -> AptBound:
    """ell_base / ((g - 1) 80 2^13 e^54 pi) as an exact coefficient times e^-54 / pi."""
    ell_base = Fraction(ell_base)
    if g < 2:
        raise CertificationError(f"Need g >= 2, got {g}")

    if ell_base < 0:
        raise CertificationError(f"Translation length must be non-negative, got {ell_base}")

    coefficient = ell_base / ((g - 1) * APT_RATIONAL_FACTOR)
    expression = symbolic.to_sympy(coefficient) * sympy.exp(-APT_EXP_POWER) / sympy.pi
    return AptBound(coefficient=coefficient, expression=expression)


def weaker_upper_bound(k: int, g: int) -> Dict[str, Any]:
    """C (k + 1) / (g log g)"""
    if g < 2:
        raise CertificationError(f"Need g >= 2, got {g}")

    if k < 0:
        raise CertificationError(f"k must be non-negative, got {k}")

    denominator = g * sympy.log(g)
    return {
        "numerator": k + 1,
        "denominator": symbolic.decimal(denominator),
        "expression": symbolic.render(symbolic.C * (k + 1) / denominator),
        "decimal_without_C": symbolic.decimal((k + 1) / denominator),
    }


def partial_upper_bound(k: int, g: int) -> Dict[str, Any]:
    """C k / g^2"""
    if g < 1:
        raise CertificationError(f"Need g >= 1, got {g}")

    if not 0 <= k <= 2 * g:
        raise CertificationError(f"Need 0 <= k <= 2g, got k={k}, g={g}")

    coefficient = Fraction(k, g * g)
    return {
        "coefficient": coefficient,
        "expression": symbolic.render(symbolic.C * symbolic.to_sympy(coefficient)),
    }
