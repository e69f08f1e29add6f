import unittest

import pytest

from mcg_certs.algebra.determinant import det_bareiss
from mcg_certs.algebra.matrix import (
    IntMatrix,
    is_identity,
    mat_pow,
    reduce_mod,
)
from mcg_certs.certificates.cover import (
    LiftedMultiTwist,
    alpha_preimage_twist,
    base_map_lifts,
    build_cover_space,
    build_paper_map,
    build_torelli_variant,
    check_cover_space,
    cover_genus,
    cover_report,
    deck_invariant,
    degree_for_genus,
    lift_multicurve_transvection,
    lift_separating_twist,
    lifted_word_matrix,
    normal_generation_obstruction,
    sl2_mod2_elements,
    sp2_mod2_reachability,
    sp2_mod2_surjectivity_sanity,
)
from mcg_certs.homology.curves import TwistWord
from mcg_certs.homology.symplectic import (
    is_symplectic,
    m_value,
    standard_space,
    transvection,
)
from mcg_certs.utils.errors import (
    CertificationError,
    NotTrivialModError,
    ShapeError,
)


class TestCoverSpace(unittest.TestCase):

    def test_degree_two_layout(self):
        cover = build_cover_space(2)
        self.assertEqual(cover.rank, 6)
        self.assertEqual(cover.genus, 3)
        self.assertEqual(cover.basis_labels, ("gamma_0", "gamma_1", "delta_0", "delta_1", "eta", "alpha"))
        self.assertEqual(cover.form[0, 2], 1)
        self.assertEqual(cover.form[2, 0], -1)
        self.assertEqual(cover.form[4, 5], 1)
        self.assertEqual(cover.deck.apply(cover.unit(cover.gamma(0))), cover.unit(cover.gamma(1)))
        self.assertEqual(cover.deck.apply(cover.unit(cover.delta(1))), cover.unit(cover.delta(0)))
        self.assertEqual(cover.deck.apply(cover.unit(cover.alpha)), cover.unit(cover.alpha))

    def test_genus_and_degree(self):
        self.assertEqual(cover_genus(5), 6)
        self.assertEqual(degree_for_genus(6), 5)

        with self.assertRaises(CertificationError):
            degree_for_genus(2)

        with self.assertRaises(CertificationError):
            build_cover_space(1)

    def test_form_and_deck(self):
        for d in range(2, 65):
            cover = build_cover_space(d)
            check_cover_space(cover)
            self.assertEqual(cover.form.T, -cover.form)
            self.assertEqual(det_bareiss(cover.form), 1)
            self.assertEqual(mat_pow(cover.deck, d), IntMatrix.identity(cover.rank))


class TestLifts(unittest.TestCase):

    def test_separating_lift(self):
        self.assertEqual(lift_separating_twist(3, -2), IntMatrix.identity(8))

        with self.assertRaises(CertificationError):
            lift_separating_twist(3, 1, separating=False)

        with self.assertRaises(CertificationError):
            lift_separating_twist(3, 0)

    def test_alpha_preimage_lift(self):
        for d in (2, 3, 7):
            cover = build_cover_space(d)
            M = lift_multicurve_transvection(alpha_preimage_twist(cover, -1), cover)
            expected = IntMatrix.identity(cover.rank).to_lists()
            expected[cover.alpha][cover.eta] = -d
            self.assertEqual(M.to_lists(), expected)

    def test_example_map_degree_two(self):
        expected = IntMatrix.identity(6).to_lists()
        expected[5][4] = -2
        self.assertEqual(build_paper_map(2).to_lists(), expected)

    def test_zero_class_components(self):
        cover = build_cover_space(2)
        zero = (0,) * cover.rank
        t = LiftedMultiTwist(components=((zero, zero),), exponent=3)
        self.assertEqual(lift_multicurve_transvection(t, cover), IntMatrix.identity(6))

    def test_bad_components(self):
        cover = build_cover_space(2)
        with self.assertRaises(CertificationError):
            LiftedMultiTwist(components=(), exponent=0)

        cls = cover.unit(cover.alpha)
        with self.assertRaises(CertificationError):
            lift_multicurve_transvection(LiftedMultiTwist(components=((cls, cls),), exponent=1), cover)

        with self.assertRaises(ShapeError):
            lift_multicurve_transvection(LiftedMultiTwist(components=(((1, 0), (0, 1)),), exponent=1), cover)

    def test_unknown_lift_kind(self):
        with self.assertRaises(CertificationError):
            lifted_word_matrix(2, (("nonseparating", 1),))

    def test_base_map_lifts(self):
        self.assertTrue(base_map_lifts())
        self.assertFalse(base_map_lifts(word=TwistWord((("eta", 1),))))


@pytest.mark.parametrize("d", range(2, 65))
def test_example_map_properties(d):
    cover = build_cover_space(d)
    M = build_paper_map(d)
    I = IntMatrix.identity(cover.rank)

    assert is_symplectic(M, cover)
    assert m_value(M, cover) == 2 * d + 1
    assert m_value(M, cover) == 2 * cover.genus - 1
    assert is_identity(reduce_mod(M, d))
    assert (M - I) @ (M - I) == IntMatrix.zeros(cover.rank, cover.rank)
    assert deck_invariant(M, cover)

    torelli = build_torelli_variant(d)
    assert torelli == I
    assert m_value(torelli, cover) == 2 * d + 2

    assert cover_report(d).passed
    assert cover_report(d, torelli_variant=True).passed


class TestObstruction(unittest.TestCase):

    def test_example_map_is_obstructed(self):
        for d in (2, 5, 11):
            cert = normal_generation_obstruction(build_paper_map(d), d)
            self.assertTrue(cert.matrix_mod_d_is_identity)
            record = cert.to_json_record()
            self.assertEqual(record["kind"], "obstruction")
            self.assertEqual(record["degree"], str(d))
            self.assertEqual(record["depends_on"], ["Sp reduction surjectivity (cited)"])

    def test_identity_is_obstructed(self):
        cert = normal_generation_obstruction(IntMatrix.identity(4), 3)
        self.assertEqual(cert.degree, 3)

    def test_transvection_is_refused(self):
        S = standard_space(1)
        with self.assertRaises(NotTrivialModError) as ctx:
            normal_generation_obstruction(transvection(S.basis_vector("a1"), 1, S), 2)
        self.assertEqual(ctx.exception.entry, (0, 1))
        self.assertEqual(ctx.exception.value, 1)

    def test_transvection_by_degree_is_obstructed(self):
        S = standard_space(1)
        cert = normal_generation_obstruction(transvection(S.basis_vector("a1"), 4, S), 2)
        self.assertEqual(cert.degree, 2)

    def test_preconditions(self):
        with self.assertRaises(CertificationError):
            normal_generation_obstruction(IntMatrix.identity(4), 1)

        with self.assertRaises(CertificationError):
            normal_generation_obstruction(IntMatrix.identity(4) * 3, 2)

        with self.assertRaises(ShapeError):
            normal_generation_obstruction(IntMatrix.identity(3), 2)


class TestSurjectivitySanity(unittest.TestCase):

    def test_sl2_mod2_has_six_elements(self):
        self.assertEqual(len(sl2_mod2_elements()), 6)

    def test_generators_reach_everything(self):
        result = sp2_mod2_reachability()
        self.assertTrue(result.passed)
        self.assertEqual(result.reached, 6)
        self.assertEqual(result.first_length["1001"], 0)
        self.assertEqual(result.first_length["1101"], 1)
        self.assertTrue(sp2_mod2_surjectivity_sanity())

    def test_short_words_do_not_suffice(self):
        self.assertFalse(sp2_mod2_reachability(max_length=1).passed)
