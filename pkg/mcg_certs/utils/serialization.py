from fractions import Fraction
from typing import (
    Any,
    Dict,
    Optional,
    Sequence,
)

import logging
import os
import sys

import numpy as np
import orjson

from mcg_certs.algebra.matrix import IntMatrix
from mcg_certs.utils.errors import (
    CertificationError,
    ShapeError,
)


logger = logging.getLogger(__name__)

JSON_OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS


def int_str(value: int) -> str:
    return str(int(value))


def rational_str(value: Fraction) -> str:
    """'p/q', or just 'p' for integers."""
    return str(Fraction(value))


def stringify_numbers(obj: Any) -> Any:
    """Integers become decimal strings and rationals 'p/q'; bools and floats pass through."""
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return bool(obj) if obj is not None else None

    if isinstance(obj, np.integer):
        return int_str(int(obj))

    if isinstance(obj, int):
        return int_str(obj)

    if isinstance(obj, Fraction):
        return rational_str(obj)

    if isinstance(obj, dict):
        return {str(k): stringify_numbers(v) for k, v in obj.items()}

    if isinstance(obj, (list, tuple)):
        return [stringify_numbers(v) for v in obj]

    return obj


def matrix_to_record(M: IntMatrix, basis_labels: Optional[Sequence[str]] = None) -> Dict[str, Any]:
    record: Dict[str, Any] = {
        "rows": M.rows,
        "cols": M.cols,
        "entries": [[int_str(x) for x in row] for row in M.to_lists()],
    }
    if basis_labels is not None:
        if len(basis_labels) != M.rows:
            raise ShapeError(f"{len(basis_labels)} basis labels for a matrix with {M.rows} rows")
        record["basis_labels"] = list(basis_labels)

    return record


def _parse_entry(value: Any) -> int:
    if isinstance(value, bool):
        raise CertificationError(f"Matrix entry {value!r} is not an integer")

    if isinstance(value, int):
        return value

    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            pass

    raise CertificationError(f"Matrix entry {value!r} is not an integer")


def matrix_from_record(data: Any) -> IntMatrix:
    if not isinstance(data, dict):
        raise CertificationError("Matrix record must be a JSON object with rows, cols and entries")

    try:
        rows, cols, entries = int(data["rows"]), int(data["cols"]), data["entries"]
    except (KeyError, TypeError, ValueError) as e:
        raise CertificationError(f"Matrix record is missing a field: {e}")

    if not isinstance(entries, list) or len(entries) != rows:
        raise ShapeError(f"Matrix record declares {rows} rows but carries {len(entries) if isinstance(entries, list) else 0}")

    parsed = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != cols:
            raise ShapeError(f"Row {i} does not have {cols} entries")
        parsed.append([_parse_entry(x) for x in row])

    if rows == 0:
        return IntMatrix.zeros(0, cols)

    return IntMatrix(parsed)


def load_matrix(path: str) -> IntMatrix:
    if not os.path.exists(path):
        raise CertificationError(f"Matrix file not found: {path}")

    with open(path, "rb") as f:
        try:
            data = orjson.loads(f.read())
        except orjson.JSONDecodeError as e:
            raise CertificationError(f"Matrix file {path} is not valid JSON: {e}")

    return matrix_from_record(data)


def dump_json(record: Any) -> bytes:
    """Deterministic JSON: sorted keys, two-space indent, trailing newline."""
    return orjson.dumps(record, option=JSON_OPTIONS) + b"\n"


def write_output(payload: bytes, path: Optional[str] = None) -> None:
    """Writes to `path`, or to stdout when no path is given."""
    if path is None:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
        return

    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, "wb") as f:
        f.write(payload)

    logger.info(f"Wrote {len(payload)} bytes to {path}")
