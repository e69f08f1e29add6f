import os
import tempfile
import unittest
from fractions import Fraction

import numpy as np
import orjson

from mcg_certs.algebra.matrix import IntMatrix
from mcg_certs.utils.errors import (
    CertificationError,
    ShapeError,
)
from mcg_certs.utils.serialization import (
    dump_json,
    load_matrix,
    matrix_from_record,
    matrix_to_record,
    rational_str,
    stringify_numbers,
    write_output,
)


class TestSerialization(unittest.TestCase):

    def test_matrix_record(self):
        M = IntMatrix([[1, -2], [10 ** 40, 0]])
        record = matrix_to_record(M)
        self.assertEqual(record["rows"], 2)
        self.assertEqual(record["entries"][1][0], "1" + "0" * 40)
        self.assertEqual(matrix_from_record(record), M)

    def test_basis_labels(self):
        record = matrix_to_record(IntMatrix.identity(2), ["a1", "b1"])
        self.assertEqual(record["basis_labels"], ["a1", "b1"])

        with self.assertRaises(ShapeError):
            matrix_to_record(IntMatrix.identity(2), ["a1"])

    def test_entries_may_be_numbers_or_strings(self):
        M = matrix_from_record({"rows": 1, "cols": 3, "entries": [[1, "-7", " 3 "]]})
        self.assertEqual(M.to_lists(), [[1, -7, 3]])

    def test_malformed_records(self):
        with self.assertRaises(ShapeError):
            matrix_from_record({"rows": 2, "cols": 2, "entries": [[1, 0]]})

        with self.assertRaises(ShapeError):
            matrix_from_record({"rows": 1, "cols": 2, "entries": [[1, 0, 0]]})

        with self.assertRaises(CertificationError):
            matrix_from_record({"rows": 1, "cols": 1, "entries": [["x"]]})

        with self.assertRaises(CertificationError):
            matrix_from_record({"rows": 1, "cols": 1, "entries": [[1.5]]})

        with self.assertRaises(CertificationError):
            matrix_from_record({"rows": 1, "cols": 1, "entries": [[True]]})

        with self.assertRaises(CertificationError):
            matrix_from_record({"cols": 1, "entries": [[1]]})

        with self.assertRaises(CertificationError):
            matrix_from_record([[1]])

    def test_load_matrix(self):
        with self.assertRaises(CertificationError):
            load_matrix("/nonexistent/matrix.json")

        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "m.json")
            with open(path, "wb") as f:
                f.write(orjson.dumps(matrix_to_record(IntMatrix([[2, 1], [1, 1]]))))
            self.assertEqual(load_matrix(path), IntMatrix([[2, 1], [1, 1]]))

            with open(path, "w") as f:
                f.write("[")
            with self.assertRaises(CertificationError):
                load_matrix(path)

    def test_stringify_numbers(self):
        record = {
            "n": 12,
            "q": Fraction(2, 3),
            "whole": Fraction(4, 2),
            "flag": True,
            "np_flag": np.bool_(False),
            "np_int": np.int64(-3),
            "nested": [1, {"x": Fraction(-1, 2)}],
            "text": "C/(g*j)",
            "missing": None,
        }
        self.assertEqual(stringify_numbers(record), {
            "n": "12",
            "q": "2/3",
            "whole": "2",
            "flag": True,
            "np_flag": False,
            "np_int": "-3",
            "nested": ["1", {"x": "-1/2"}],
            "text": "C/(g*j)",
            "missing": None,
        })
        self.assertEqual(rational_str(Fraction(1152, 1152)), "1")

    def test_dump_json_is_deterministic(self):
        first = dump_json({"b": "1", "a": ["2", "3"]})
        second = dump_json({"a": ["2", "3"], "b": "1"})
        self.assertEqual(first, second)
        self.assertTrue(first.endswith(b"\n"))
        self.assertLess(first.index(b'"a"'), first.index(b'"b"'))

    def test_write_output(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "nested", "out.json")
            write_output(b"payload\n", path)
            with open(path, "rb") as f:
                self.assertEqual(f.read(), b"payload\n")
