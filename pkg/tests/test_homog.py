"""Defining-function construction and evaluation."""

import math

import numpy as np
import pytest

from reinhardt.errors import ContractViolation, EvaluationError
from reinhardt.homog import (
    DefiningFunction,
    InvariantProfile,
    Monomial,
    SegmentIntegral,
    bp_polynomial_eval,
    construct_from_measure,
    eval_from_s1_profile,
    example5_closed_form,
    example6,
    extend_from_germ,
    g_quintic_blend,
    restrict_to_s1,
    tabulated,
)
from reinhardt.weights import WeightSystem

WS5 = WeightSystem(3, (1, 1, 1), (9.0, 9.0), 2)
WS6 = WeightSystem(3, (1, 1, 1), (8.0, 8.0), 2)


def psi5():
    return DefiningFunction(WS5, (SegmentIntegral(4.0, 5.0, (5.0, 4.0), (4.0, 5.0)),))


class TestClosedForm:
    def test_diagonal_value(self):
        # x2 = x3 = 1: leading 2 plus int_4^5 1 ds = 3
        assert example5_closed_form(1.0, 1.0) == pytest.approx(3.0, abs=1e-12)

    def test_off_diagonal_value(self):
        # quotient term (2^5 - 2^4) / log 2 = 16 / log 2
        want = 1.0 + 2.0 ** 9 + 16.0 / math.log(2.0)
        assert example5_closed_form(1.0, 2.0) == pytest.approx(want, rel=1e-12)

    def test_axes_vanish_to_leading(self):
        assert example5_closed_form(0.7, 0.0) == pytest.approx(0.7 ** 9, rel=1e-15)
        assert example5_closed_form(0.0, 0.0) == 0.0

    def test_symmetry(self):
        a = example5_closed_form(0.3, 1.1)
        b = example5_closed_form(1.1, 0.3)
        assert a == pytest.approx(b, rel=1e-14)

    def test_quadrature_equivalence(self):
        rng = np.random.default_rng(3)
        x = rng.uniform(0.0, 1.5, (1000, 2))
        # force part of the sample into the near-diagonal band
        x[:100, 1] = x[:100, 0] + rng.uniform(-1e-4, 1e-4, 100)
        x = np.abs(x)
        f = psi5()
        got = f(x)
        want = example5_closed_form(x[:, 0], x[:, 1])
        assert np.max(np.abs(got - want) / np.maximum(1.0, np.abs(want))) < 1e-8

    def test_diagonal_band_edges(self):
        # both branches of the band switch agree with the quadrature oracle
        f = psi5()
        x = 0.9
        for eps in (1e-8, 5e-7, 2e-6, 1e-5):
            pt = np.array([x, x + eps])
            assert example5_closed_form(*pt) == pytest.approx(
                float(f(pt)), rel=1e-10
            )


class TestExample6:
    def test_g_forced_value(self):
        # quotient 4 > 1 forces g(4) = 16
        assert example6(1.0, 2.0) == pytest.approx(273.0, abs=1e-12)

    def test_axis_values(self):
        assert example6(0.0, 0.5) == pytest.approx(0.5 ** 8, rel=1e-15)
        assert example6(0.5, 0.0) == pytest.approx(0.5 ** 8, rel=1e-15)

    def test_blend_profile_shape(self):
        assert g_quintic_blend(0.0) == 0.0
        assert g_quintic_blend(1.0) == pytest.approx(1.0, abs=1e-15)
        assert g_quintic_blend(-1.5) == pytest.approx(2.25, abs=1e-15)

    def test_rejects_bad_profile(self):
        with pytest.raises(ContractViolation):
            example6(1.0, 1.0, g=lambda x: np.asarray(x, float) ** 2 + 1.0)


class TestTerms:
    def test_monomial_weight_check(self):
        with pytest.raises(ContractViolation):
            Monomial(1.0, (2.0, 2.0)).validate(WS6)

    def test_monomial_single_variable_rejected(self):
        with pytest.raises(ContractViolation):
            Monomial(1.0, (8.0, 0.0)).validate(WS6)

    def test_segment_weight_check(self):
        seg = SegmentIntegral(4.0, 5.0, (5.0, 4.0), (5.0, 5.0))
        with pytest.raises(ContractViolation):
            seg.validate(WS5)

    def test_segment_constant_one_density(self):
        # int_4^5 x^s ds at x2 = x3 = x reduces to x^9 * 1
        seg = SegmentIntegral(4.0, 5.0, (5.0, 4.0), (4.0, 5.0))
        val = seg.eval(np.array([0.8, 0.8]))
        assert val == pytest.approx(0.8 ** 9, rel=1e-13)

    def test_tabulated_density(self):
        flat = tabulated([4.0, 4.5, 5.0], [1.0, 1.0, 1.0])
        seg = SegmentIntegral(4.0, 5.0, (5.0, 4.0), (4.0, 5.0), density=flat)
        ref = SegmentIntegral(4.0, 5.0, (5.0, 4.0), (4.0, 5.0))
        x = np.array([0.9, 1.2])
        assert seg.eval(x) == pytest.approx(ref.eval(x), rel=1e-14)

    def test_invariant_profile_zero_prefactor(self):
        term = InvariantProfile((8.0, 0.0), ((-2.0, 2.0),), "quintic_blend")
        term.validate(WS6)
        assert term.eval(np.array([0.0, 0.7])) == 0.0

    def test_invariant_profile_weight_checks(self):
        with pytest.raises(ContractViolation):
            InvariantProfile((6.0, 0.0), ((-2.0, 2.0),), "quintic_blend").validate(WS6)
        with pytest.raises(ContractViolation):
            InvariantProfile((8.0, 0.0), ((-2.0, 4.0),), "quintic_blend").validate(WS6)


class TestDefiningFunction:
    def test_leading_part_only(self):
        f = DefiningFunction(WS6)
        assert f(np.array([0.5, 0.5])) == pytest.approx(2 * 0.5 ** 8, rel=1e-15)

    def test_axis_normalization_enforced(self):
        # a single-variable extra term breaks psi = x^alpha on the axis
        class Bad(Monomial):
            def validate(self, ws):
                pass

        with pytest.raises(ContractViolation):
            DefiningFunction(WS6, (Bad(0.5, (8.0, 0.0)),))

    def test_negative_moduli_rejected(self):
        with pytest.raises(ContractViolation):
            DefiningFunction(WS6)(np.array([-0.1, 0.5]))

    def test_batched_shapes(self):
        f = psi5()
        x = np.random.default_rng(0).uniform(0, 1, (7, 5, 2))
        assert f(x).shape == (7, 5)

    def test_terms_and_profile_exclusive(self):
        with pytest.raises(ContractViolation):
            DefiningFunction(
                WS5,
                (SegmentIntegral(4.0, 5.0, (5.0, 4.0), (4.0, 5.0)),),
                s1_profile=lambda y: np.ones(np.asarray(y).shape[:-1]),
            )


class TestMeasureConstruction:
    def test_matches_example5(self):
        f = construct_from_measure(
            WS5, segments=(SegmentIntegral(4.0, 5.0, (5.0, 4.0), (4.0, 5.0)),)
        )
        x = np.random.default_rng(1).uniform(0, 1.4, (200, 2))
        want = example5_closed_form(x[:, 0], x[:, 1])
        assert np.max(np.abs(f(x) - want) / np.maximum(1, np.abs(want))) < 1e-8

    def test_atoms(self):
        f = construct_from_measure(WS6, atoms=(((4.0, 4.0), 2.0),))
        assert f(np.array([1.0, 1.0])) == pytest.approx(4.0, abs=1e-14)

    def test_rejects_inadmissible_atom(self):
        with pytest.raises(ContractViolation):
            construct_from_measure(WS5, atoms=(((3.0, 6.0), 1.0),))

    def test_rejects_segment_leaving_m(self):
        # path through s3 in [1, 5] leaves the admissible region near s3 = 1
        seg = SegmentIntegral(1.0, 5.0, (8.0, 1.0), (4.0, 5.0))
        with pytest.raises(ContractViolation):
            construct_from_measure(WS5, segments=(seg,))

    def test_rejects_negative_mass(self):
        with pytest.raises(ContractViolation):
            construct_from_measure(WS6, atoms=(((4.0, 4.0), -1.0),))


class TestExtension:
    def test_germ_extension_reproduces_homogeneous_function(self):
        phi = lambda x: example5_closed_form(x[..., 0], x[..., 1])
        psi = extend_from_germ(phi, 0.5, WS5)
        x = np.random.default_rng(2).uniform(0, 1.5, (500, 2))
        want = example5_closed_form(x[:, 0], x[:, 1])
        assert np.max(np.abs(psi(x) - want) / np.maximum(1, np.abs(want))) < 1e-9

    def test_origin(self):
        psi = extend_from_germ(lambda x: np.sum(x, axis=-1), 0.5, WS5)
        assert psi(np.zeros(2)) == 0.0

    def test_bad_delta(self):
        with pytest.raises(ContractViolation):
            extend_from_germ(lambda x: 0.0, 0.0, WS5)

    def test_s1_profile_reproduces_example5(self):
        f = psi5()
        profile = restrict_to_s1(f)
        x = np.random.default_rng(4).uniform(0.01, 1.5, (300, 2))
        got = eval_from_s1_profile(profile, x, WS5)
        want = f(x)
        assert np.max(np.abs(got - want) / np.maximum(1, np.abs(want))) < 1e-9


class TestHermitianPolynomials:
    def test_conjugate_pair_fixture(self):
        table = {
            ((2, 0), (0, 2)): 0.5 + 0.0j,
            ((0, 2), (2, 0)): 0.5 + 0.0j,
        }
        z = np.array([0.4 + 0.3j, 0.2 - 0.5j])
        got = bp_polynomial_eval(table, z, (4.0, 4.0))
        want = (z[0] ** 2 * np.conj(z[1]) ** 2).real
        assert got == pytest.approx(want, rel=1e-13)

    def test_non_hermitian_rejected(self):
        table = {
            ((2, 0), (0, 2)): 0.5 + 0.1j,
            ((0, 2), (2, 0)): 0.5 + 0.1j,  # should be the conjugate
        }
        with pytest.raises(ContractViolation):
            bp_polynomial_eval(table, np.array([1.0, 1.0]), (4.0, 4.0))

    def test_wrong_weight_rejected(self):
        table = {((3, 0), (3, 0)): 1.0 + 0.0j}
        with pytest.raises(ContractViolation):
            bp_polynomial_eval(table, np.array([1.0, 1.0]), (4.0, 4.0))
