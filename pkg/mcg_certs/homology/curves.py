from dataclasses import (
    dataclass,
    field,
)
from typing import (
    Any,
    Dict,
    Iterator,
    Mapping,
    Optional,
    Sequence,
    Tuple,
)

import logging
import os

import orjson

from mcg_certs.algebra.matrix import IntMatrix
from mcg_certs.homology.symplectic import (
    IntersectionSpace,
    standard_space,
    transvection,
)
from mcg_certs.utils.errors import (
    CertificationError,
    ShapeError,
)


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BaseCurve:
    """A named simple closed curve with its homology class and known geometric intersections."""

    id: str
    homology: Tuple[int, ...]
    separating: bool = False
    geom: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.separating and any(self.homology):
            raise CertificationError(f"Separating curve {self.id!r} must have zero homology class")

        if self.geom.get(self.id, 0) != 0:
            raise CertificationError(f"Curve {self.id!r} has nonzero self-intersection in its geom table")

        if any(value < 0 for value in self.geom.values()):
            raise CertificationError(f"Curve {self.id!r} has a negative geometric intersection number")

    @property
    def genus(self) -> int:
        return len(self.homology) // 2

    @classmethod
    def from_record(cls, curve_id: str, record: Mapping[str, Any]) -> "BaseCurve":
        try:
            homology = tuple(int(x) for x in record["homology"])
        except (KeyError, TypeError, ValueError) as e:
            raise CertificationError(f"Curve {curve_id!r} has no valid homology field: {e}")

        geom = {str(k): int(v) for k, v in (record.get("geom") or {}).items()}
        return cls(
            id=curve_id,
            homology=homology,
            separating=bool(record.get("separating", False)),
            geom=geom,
        )

    def to_record(self) -> Dict[str, Any]:
        return {
            "homology": list(self.homology),
            "separating": self.separating,
            "geom": dict(self.geom),
        }


class CurveTable:
    """Curves sharing one genus, looked up by id."""

    def __init__(self, curves: Sequence[BaseCurve]):
        if not curves:
            raise CertificationError("A curve table needs at least one curve")

        lengths = {len(c.homology) for c in curves}
        if len(lengths) != 1 or next(iter(lengths)) % 2:
            raise ShapeError(f"Curve homology classes must share one even length, got {sorted(lengths)}")

        self._curves = {c.id: c for c in curves}
        if len(self._curves) != len(curves):
            raise CertificationError("Duplicate curve id in curve table")

        self.genus = next(iter(lengths)) // 2
        self._check_symmetry()

    def _check_symmetry(self) -> None:
        for curve in self._curves.values():
            for other_id, value in curve.geom.items():
                other = self._curves.get(other_id)
                if other is not None and curve.id in other.geom and other.geom[curve.id] != value:
                    raise CertificationError(
                        f"Geometric intersection of {curve.id!r} and {other_id!r} is not symmetric: "
                        f"{value} vs {other.geom[curve.id]}"
                    )

    def __getitem__(self, curve_id: str) -> BaseCurve:
        try:
            return self._curves[curve_id]
        except KeyError:
            raise CertificationError(f"Unknown curve id {curve_id!r}")

    def __contains__(self, curve_id: object) -> bool:
        return curve_id in self._curves

    def __iter__(self) -> Iterator[str]:
        return iter(self._curves)

    def __len__(self) -> int:
        return len(self._curves)

    def geometric(self, first: str, second: str) -> Optional[int]:
        """i(first, second) if either curve records it."""
        if first == second:
            return 0

        value = self[first].geom.get(second)
        if value is None:
            value = self[second].geom.get(first)

        return value

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "CurveTable":
        return cls([BaseCurve.from_record(str(k), v) for k, v in data.items()])

    def to_dict(self) -> Dict[str, Any]:
        return {k: c.to_record() for k, c in self._curves.items()}


@dataclass(frozen=True)
class TwistWord:
    """Letters (curve id, exponent) of a product of Dehn twist powers, written left to right."""

    letters: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        for curve_id, exponent in self.letters:
            if exponent == 0:
                raise CertificationError(f"Letter {curve_id!r} has exponent 0")

    @classmethod
    def parse(cls, pairs: Sequence[Sequence[Any]]) -> "TwistWord":
        letters = []
        for pair in pairs:
            if len(pair) != 2:
                raise CertificationError(f"Twist letter must be an [id, exponent] pair, got {pair!r}")
            letters.append((str(pair[0]), int(pair[1])))

        return cls(tuple(letters))

    def __len__(self) -> int:
        return len(self.letters)

    def validate(self, curves: CurveTable) -> None:
        for curve_id, _ in self.letters:
            if curve_id not in curves:
                raise CertificationError(f"Twist word refers to unknown curve {curve_id!r}")


def default_curve_table_path() -> str:
    base_path = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    return os.path.join(base_path, "data", "genus2_curves.json")


def load_curve_table(path: Optional[str] = None) -> CurveTable:
    path = path or default_curve_table_path()
    if not os.path.exists(path):
        raise CertificationError(f"Curve table not found: {path}")

    with open(path, "rb") as f:
        try:
            data = orjson.loads(f.read())
        except orjson.JSONDecodeError as e:
            raise CertificationError(f"Curve table {path} is not valid JSON: {e}")

    if not isinstance(data, dict):
        raise CertificationError(f"Curve table {path} must be a JSON object keyed by curve id")

    table = CurveTable.from_dict(data)
    logger.debug(f"Loaded {len(table)} curves of genus {table.genus} from {path}")
    return table


def load_twist_word(path: str) -> TwistWord:
    with open(path, "rb") as f:
        return TwistWord.parse(orjson.loads(f.read()))


def evaluate_twist_word(
    word: TwistWord,
    curves: CurveTable,
    space: Optional[IntersectionSpace] = None,
) -> IntMatrix:
    """Homology action of the word; the rightmost letter acts first."""
    space = space or standard_space(curves.genus)
    if space.form.rows != 2 * curves.genus:
        raise ShapeError(f"Curve table of genus {curves.genus} does not match a space of rank {space.form.rows}")

    word.validate(curves)
    result = IntMatrix.identity(space.form.rows)
    for curve_id, exponent in word.letters:
        curve = curves[curve_id]
        if curve.separating:
            continue
        result = result @ transvection(curve.homology, exponent, space)

    return result
