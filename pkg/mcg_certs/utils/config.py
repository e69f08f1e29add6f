from dataclasses import dataclass
from typing import (
    Any,
    Dict,
    List,
    Optional,
    Tuple,
)

import logging
import os
import sys

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from mcg_certs.utils.constants import (
    DEFAULT_SEED,
    DEFAULT_SPREAD_OFFSET,
)
from mcg_certs.utils.errors import CertificationError


logger = logging.getLogger(__name__)


def data_path(filename: str) -> str:
    base_path = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    return os.path.join(base_path, "data", filename)


def load_toml(path: str) -> Dict[str, Any]:
    if not os.path.exists(path):
        raise CertificationError(f"Configuration file not found: {path}")

    with open(path, "rb") as f:
        try:
            return tomllib.load(f)
        except tomllib.TOMLDecodeError as e:
            raise CertificationError(f"Configuration file {path} is not valid TOML: {e}")


@dataclass(frozen=True)
class IntersectionEntry:
    first: str
    second: str
    value: int
    provenance: str = ""


def load_base_intersections(path: Optional[str] = None) -> List[IntersectionEntry]:
    """Reads the [[pair]] entries of an intersection table file."""
    path = path or data_path("intersections.toml")
    data = load_toml(path)

    entries = []
    for raw in data.get("pair", []):
        try:
            entry = IntersectionEntry(
                first=str(raw["first"]),
                second=str(raw["second"]),
                value=int(raw["value"]),
                provenance=str(raw.get("provenance", "")),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise CertificationError(f"Malformed intersection entry {raw!r} in {path}: {e}")

        if entry.value < 0:
            raise CertificationError(f"Negative intersection number for ({entry.first}, {entry.second}) in {path}")
        entries.append(entry)

    logger.debug(f"Loaded {len(entries)} base intersections from {path}")
    return entries


def parse_range(text: str) -> Tuple[int, int]:
    """'A..B' (inclusive) or a single integer."""
    try:
        if ".." in text:
            start, stop = (int(part) for part in text.split("..", 1))
        else:
            start = stop = int(text)
    except ValueError:
        raise CertificationError(f"Invalid range {text!r}; expected A..B")

    if start > stop:
        raise CertificationError(f"Range {text!r} is empty")

    return start, stop


@dataclass(frozen=True)
class RunConfig:
    command: str
    seed: int = DEFAULT_SEED
    output: Optional[str] = None
    output_format: str = "json"
    workers: int = 1
    matrix_path: Optional[str] = None
    k: Optional[int] = None
    random_genus: Optional[int] = None
    degree_range: Tuple[int, int] = (2, 10)
    torelli_variant: bool = False
    genus: Optional[int] = None
    genus_range: Tuple[int, int] = (580, 10000)
    int_sum: Optional[int] = None
    offset: int = DEFAULT_SPREAD_OFFSET
    orbit_n: int = 3
    orbit_k: int = 1

    def __post_init__(self):
        if self.workers < 0:
            raise CertificationError(f"workers must be non-negative, got {self.workers}")
