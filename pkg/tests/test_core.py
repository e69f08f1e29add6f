import os
import unittest

from mcg_certs.core import (
    SPREAD_COLUMNS,
    CertificationEngine,
    obstruction_for_degree,
    spread_row,
)
from mcg_certs.homology.symplectic import (
    is_symplectic,
    m_value,
    standard_space,
)
from mcg_certs.utils.errors import CertificationError


FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


class TestCertificationEngine(unittest.TestCase):

    def setUp(self):
        self.engine = CertificationEngine(seed=20240229, workers=1)

    def test_planted_matrix_is_seeded(self):
        first = self.engine.planted_matrix(4, 5)
        second = CertificationEngine(seed=20240229).planted_matrix(4, 5)
        self.assertEqual(first, second)
        self.assertTrue(is_symplectic(first, standard_space(4)))
        self.assertGreaterEqual(m_value(first, standard_space(4)), 5)

    def test_witness_on_planted_matrix(self):
        cert = self.engine.witness(self.engine.planted_matrix(3, 3), 3)
        self.assertLessEqual(cert.witness_j, 4)
        self.assertLess(cert.lefschetz_at_j, 0)

    def test_cover_records(self):
        records = self.engine.cover_records(range(2, 6))
        self.assertEqual([r.degree for r in records], [2, 3, 4, 5])
        self.assertTrue(all(r.passed for r in records))
        self.assertEqual([r.m_value for r in records], [5, 7, 9, 11])

        torelli = self.engine.cover_records([3], torelli_variant=True)
        self.assertEqual(torelli[0].m_value, 8)

        with self.assertRaises(CertificationError):
            self.engine.cover_records([1, 2])

    def test_cover_matrices(self):
        records = self.engine.cover_matrices([2, 5])
        self.assertEqual([r["d"] for r in records], [2, 5])
        self.assertEqual(records[1]["rows"], 12)
        self.assertEqual(records[1]["basis_labels"][-2:], ["eta", "alpha"])
        self.assertEqual(records[1]["entries"][11][10], "-5")

        torelli = self.engine.cover_matrices([3], torelli_variant=True)
        self.assertEqual(len(torelli[0]["basis_labels"]), 8)

    def test_parallel_sweep_matches_serial(self):
        parallel = CertificationEngine(seed=20240229, workers=2)
        self.assertEqual(parallel.cover_records(range(2, 8)), self.engine.cover_records(range(2, 8)))
        self.assertTrue(parallel.spread_table(575, 600, 576).equals(self.engine.spread_table(575, 600, 576)))

    def test_obstructions(self):
        certs = self.engine.obstructions([2, 3])
        self.assertEqual([c.degree for c in certs], [2, 3])
        self.assertEqual(obstruction_for_degree(4).degree, 4)

    def test_spread_row(self):
        row = spread_row(1731, 576, 3)
        self.assertEqual(list(row), ["g", "int_sum", "offset", "available", "n_star", "bound",
                                     "linearized_bound", "automaton_width", "automaton_confirms"])
        self.assertEqual((row["n_star"], row["bound"], row["linearized_bound"]), (3, "2/3", "1"))

        row = spread_row(100, 576, 2)
        self.assertFalse(row["available"])
        self.assertEqual(row["bound"], "")

        # floor bound exists at 579 but the linearized one does not
        row = spread_row(579, 576, 3)
        self.assertTrue(row["available"])
        self.assertEqual(row["linearized_bound"], "")

        row = spread_row(5, 3, 2)
        self.assertFalse(row["available"])
        self.assertEqual((row["n_star"], row["bound"], row["automaton_width"]), (1, "", 5))
        self.assertIs(row["automaton_confirms"], False)

    def test_spread_table(self):
        df = self.engine.spread_table(570, 590, 576)
        self.assertEqual(list(df.columns), SPREAD_COLUMNS + ["seed"])
        self.assertEqual(len(df), 21)
        self.assertEqual(int((~df["available"]).sum()), 9)
        self.assertTrue((df["seed"] == 20240229).all())

    def test_orbit_sum(self):
        result = self.engine.orbit_sum(4, 2)
        self.assertEqual((result.dimension, result.invariant), (4, True))
        self.assertEqual(self.engine.orbit_sum(4, 2, "ones").dimension, 1)

        with self.assertRaises(CertificationError):
            self.engine.orbit_sum(4, 2, "twos")

    def test_surjectivity_sanity(self):
        self.assertTrue(self.engine.surjectivity_sanity().passed)

    def test_paper_example_lines(self):
        with open(os.path.join(FIXTURES, "paper_example.txt")) as f:
            expected = f.read().splitlines()

        self.assertEqual(self.engine.paper_example_lines(), expected[:-1])

    def test_paper_example_at_genus(self):
        lines = self.engine.paper_example_lines(genus=1731)
        self.assertEqual(lines[-2:], ["bound(1731) = 1", "floor bound(1731) = 2/3"])

        lines = self.engine.paper_example_lines(genus=579 + 1)
        self.assertEqual(lines[-2], "bound(580) = 1152")

    def test_paper_example_record(self):
        record = self.engine.paper_example_record(genus=1155)
        self.assertEqual(record["int_sum"], 576)
        self.assertEqual(record["bound"], "1152/(g-579)")
        self.assertEqual(record["bound_at_genus"], 2)
