import unittest

import numpy as np
from hypothesis import given, settings, strategies as st

from geometry.catalog import (
    BergerParams,
    berger_algebra,
    berger_g_epsilon,
    intro_table_cases,
    sample_berger_params,
    solvable_control,
)
from geometry.errors import FrameError, InputError
from geometry.foliation import (
    CONTRADICTION,
    NOT_APPLICABLE,
    PREMISES_FAIL,
    VERIFIED,
    adapted_frame,
    build_setup,
    classify,
    coefficients,
    g_epsilon_frame,
    killing_fit,
    reconstruct,
    second_fundamental_forms,
    structural_checks,
    trace_identity,
    verify_theorem_minimal,
    verify_theorem_totally_geodesic,
)
from geometry.lie_core import from_brackets
from geometry.semi_metric import MetricTensor, random_orthogonal


SAMPLING_RANGES = {"lambda": [0.2, 5.0], "other": [-2.0, 2.0]}


def berger_setup(**values):
    algebra, metric, vertical = berger_algebra(BergerParams(**values))
    return algebra, metric, vertical, adapted_frame(algebra, metric, vertical)


class TestAdaptedFrame(unittest.TestCase):

    def test_berger_frame_is_the_coordinate_frame(self):
        _, metric, _, setup = berger_setup(lam=2.0, x3=1.0, rho=1.0)
        np.testing.assert_allclose(setup.frame, np.eye(5), atol=1e-12)
        self.assertEqual(setup.causalities, (1, 1, 1, 1, 1))
        self.assertTrue(setup.closed)
        self.assertTrue(setup.normalized)

    def test_horizontal_rotation(self):
        """[X0, Y0] = X0 + Y0 is rotated so that H[X, Y] = ρX with ρ = √2."""
        algebra = from_brackets(3, [(1, 2, 1, 1.0), (1, 2, 2, 1.0)])
        setup = adapted_frame(algebra, MetricTensor.identity(3), (0,))
        coeffs = coefficients(setup)
        self.assertAlmostEqual(coeffs.rho, np.sqrt(2.0))
        self.assertAlmostEqual(coeffs.xy_y_component, 0.0)
        self.assertTrue(setup.normalized)

    def test_null_horizontal_bracket(self):
        algebra = from_brackets(3, [(1, 2, 1, 1.0), (1, 2, 2, 1.0)])
        metric = MetricTensor(np.diag([1.0, 1.0, -1.0]))
        with self.assertRaises(FrameError):
            adapted_frame(algebra, metric, (0,))

    def test_codimension_must_be_two(self):
        algebra, metric, _ = berger_algebra(BergerParams())
        with self.assertRaises(InputError):
            adapted_frame(algebra, metric, (0, 1))
        with self.assertRaises(InputError):
            adapted_frame(algebra, metric, (0, 0, 1))

    def test_open_vertical_span(self):
        algebra, metric, _ = berger_algebra(BergerParams(lam=2.0, x3=1.0, rho=1.0))
        setup = adapted_frame(algebra, metric, (0, 1, 3))
        self.assertFalse(setup.closed)
        self.assertGreater(setup.closure_defect, 1.0)
        theorem = verify_theorem_minimal(algebra, metric, (0, 1, 3))
        self.assertEqual(theorem.outcome, NOT_APPLICABLE)

    def test_build_setup_rejects_non_orthonormal_frame(self):
        algebra, metric, _ = berger_algebra(BergerParams())
        with self.assertRaises(FrameError):
            build_setup(algebra, metric, 2.0 * np.eye(5)[:, :3], np.eye(5)[:, 3:])


class TestCoefficients(unittest.TestCase):

    def test_berger_coefficients(self):
        """λ = 2, x3 = 1, ρ = 1: [X, A] = 4B, [X, B] = -A and θ = (0, 0, -1)."""
        _, _, _, setup = berger_setup(lam=2.0, x3=1.0, rho=1.0)
        coeffs = coefficients(setup)
        expected_x = np.zeros((3, 3))
        expected_x[0, 1] = 4.0
        expected_x[1, 0] = -1.0
        np.testing.assert_allclose(coeffs.x, expected_x, atol=1e-12)
        np.testing.assert_allclose(coeffs.y, np.zeros((3, 3)), atol=1e-12)
        self.assertAlmostEqual(coeffs.rho, 1.0)
        np.testing.assert_allclose(coeffs.theta, [0.0, 0.0, -1.0], atol=1e-12)
        np.testing.assert_allclose(coeffs.x_leakage, np.zeros(3), atol=1e-12)

    def test_reconstruction(self):
        _, _, _, setup = berger_setup(lam=1.7, x3=0.3, x4=-0.2, x5=0.9, x6=0.1, z3=-0.5, z4=0.4, rho=0.6)
        rebuilt = reconstruct(setup, coefficients(setup))
        np.testing.assert_allclose(rebuilt.constants, setup.frame_constants, atol=1e-12)

    def test_trace_identity(self):
        _, _, _, setup = berger_setup(lam=2.0, x3=1.0, rho=1.0)
        identity = trace_identity(setup)
        self.assertAlmostEqual(identity.y_trace, -1.0)
        self.assertLess(identity.residual, 1e-12)


class TestClassification(unittest.TestCase):

    def test_berger_is_riemannian_minimal_not_geodesic(self):
        _, _, _, setup = berger_setup(lam=2.0, x3=1.0, rho=1.0)
        classification = classify(setup)
        self.assertEqual(classification.flags(), (True, True, True, False))
        self.assertAlmostEqual(classification.witnesses["totally_geodesic"], 3.0)
        self.assertAlmostEqual(classification.witnesses["bv_max"], 3.0)
        self.assertTrue(classification.cross_checks_agree)

    def test_unit_lambda_is_totally_geodesic(self):
        _, _, _, setup = berger_setup(lam=1.0, x3=1.0, x5=0.4, z3=-0.7, rho=1.0)
        self.assertEqual(classify(setup).flags(), (True, True, True, True))

    def test_second_fundamental_form_shapes(self):
        _, _, _, setup = berger_setup(lam=2.0, x3=1.0, rho=1.0)
        forms = second_fundamental_forms(setup)
        self.assertEqual(forms.BV.shape, (3, 3, 2))
        self.assertEqual(forms.BH.shape, (2, 2, 3))
        self.assertAlmostEqual(forms.BV[0, 1, 0], 1.5)
        np.testing.assert_allclose(forms.trace_bv(), [0.0, 0.0], atol=1e-12)

    def test_solvable_control_is_not_minimal(self):
        algebra, metric, vertical = solvable_control()
        classification = classify(adapted_frame(algebra, metric, vertical))
        self.assertTrue(classification.conformal)
        self.assertFalse(classification.minimal)
        self.assertAlmostEqual(classification.witnesses["minimal_x"], 1.0)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(min_value=0, max_value=2 ** 32 - 1))
    def test_flags_do_not_depend_on_the_frame(self, seed):
        _, _, _, setup = berger_setup(lam=2.5, x3=0.4, x4=-1.1, x5=0.2, x6=0.7, z3=1.3, z4=-0.6, rho=0.8)
        rng = np.random.default_rng(seed)
        angle = rng.uniform(0.0, 2.0 * np.pi)
        rotation = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])
        rotated = build_setup(
            setup.algebra,
            setup.metric,
            setup.vertical_frame @ random_orthogonal(rng, 3),
            setup.horizontal_frame @ rotation,
        )
        self.assertEqual(classify(rotated, 1e-8).flags(), classify(setup, 1e-8).flags())


class TestStructuralChecks(unittest.TestCase):

    def test_berger(self):
        _, _, _, setup = berger_setup(lam=2.0, x3=1.0, x5=0.5, rho=1.0)
        report = structural_checks(setup)
        self.assertTrue(report.derived_brackets_vertical)
        self.assertTrue(report.semisimple_conformal_is_riemannian)
        self.assertIsNone(report.factors_decoupled)

    def test_product_factors(self):
        case = intro_table_cases()[0]
        setup = adapted_frame(case.algebra, case.metric, case.vertical)
        report = structural_checks(setup, factors=[[0, 1, 2], [3, 4, 5]])
        self.assertTrue(report.factors_decoupled)
        self.assertAlmostEqual(report.cross_factor_leak, 0.0)

    def test_factors_must_partition(self):
        case = intro_table_cases()[0]
        setup = adapted_frame(case.algebra, case.metric, case.vertical)
        with self.assertRaises(InputError):
            structural_checks(setup, factors=[[0, 1, 2], [3, 4]])
        with self.assertRaises(InputError):
            structural_checks(setup, factors=[[0, 1, 3], [2, 4, 5]])


class TestTheorems(unittest.TestCase):

    def test_minimal_theorem_on_berger(self):
        algebra, metric, vertical = berger_algebra(BergerParams(lam=2.0, x3=1.0, rho=1.0))
        self.assertEqual(verify_theorem_minimal(algebra, metric, vertical).outcome, VERIFIED)

    def test_minimal_theorem_control(self):
        algebra, metric, vertical = solvable_control()
        report = verify_theorem_minimal(algebra, metric, vertical)
        self.assertEqual(report.outcome, PREMISES_FAIL)
        self.assertFalse(report.conclusions[0].holds)
        self.assertNotEqual(report.outcome, CONTRADICTION)

    def test_killing_fit(self):
        algebra, metric, vertical = berger_algebra(BergerParams(lam=1.0))
        c, residual, holds = killing_fit(algebra, metric, vertical)
        self.assertAlmostEqual(c, 1.0 / 8.0)
        self.assertLess(residual, 1e-12)
        self.assertTrue(holds)
        algebra, metric, vertical = berger_algebra(BergerParams(lam=2.0))
        self.assertFalse(killing_fit(algebra, metric, vertical)[2])

    def test_totally_geodesic_theorem(self):
        algebra, metric, vertical = berger_algebra(BergerParams(lam=1.0, x3=0.7, x4=-0.4, rho=1.0))
        report = verify_theorem_totally_geodesic(algebra, metric, vertical)
        self.assertEqual(report.outcome, VERIFIED)
        self.assertEqual(len(report.variants), 1)

        algebra, metric, vertical = berger_algebra(BergerParams(lam=2.0, x3=1.0, rho=1.0))
        report = verify_theorem_totally_geodesic(algebra, metric, vertical)
        self.assertEqual(report.outcome, PREMISES_FAIL)
        self.assertEqual(report.variants[0].outcome, PREMISES_FAIL)

    def test_g_epsilon_variant(self):
        params = BergerParams(lam=1.0, x3=0.7, x4=-0.4, x5=1.1, x6=0.3, z3=-0.8, z4=0.5, rho=1.0)
        algebra, metric, vertical = berger_g_epsilon(params, (1, -1, 1))
        detected = g_epsilon_frame(algebra, metric, vertical)
        self.assertIsNotNone(detected)
        self.assertAlmostEqual(detected.scale, 1.0 / 8.0)
        self.assertEqual(sorted(detected.eps), [-1, 1, 1])

        report = verify_theorem_totally_geodesic(algebra, metric, vertical)
        variant = report.variants[0]
        self.assertEqual(variant.theorem, "g-epsilon-minimal")
        self.assertEqual(variant.outcome, VERIFIED)
        self.assertLess(variant.conclusions[0].witness, 1e-9)

    @settings(max_examples=15, deadline=None)
    @given(
        st.integers(min_value=0, max_value=2 ** 32 - 1),
        st.sampled_from([(1, 1, 1), (1, -1, 1), (-1, 1, 1), (1, 1, -1), (1, -1, -1), (-1, -1, -1)]),
    )
    def test_g_epsilon_variant_on_random_unit_lambda_members(self, seed, eps):
        params = sample_berger_params(np.random.default_rng(seed), SAMPLING_RANGES, unit_lambda=True)
        algebra, metric, vertical = berger_g_epsilon(params, eps)
        report = verify_theorem_totally_geodesic(algebra, metric, vertical)
        variant = report.variants[0]
        self.assertNotEqual(report.outcome, CONTRADICTION)
        self.assertNotEqual(variant.outcome, CONTRADICTION)
        conclusions = {item.name: item.holds for item in variant.conclusions}
        self.assertTrue(conclusions["minimal"])

    def test_g_epsilon_with_involution(self):
        case = intro_table_cases()[1]
        detected = g_epsilon_frame(case.algebra, case.metric, case.vertical, case.theta)
        self.assertAlmostEqual(detected.scale, 1.0 / 8.0)
        self.assertEqual(detected.eps, (1,) * 6)
        self.assertEqual(sorted(detected.theta_eigenvalues), [-1, -1, 1, 1, 1, 1])

    def test_g_epsilon_missing(self):
        algebra, metric, vertical = berger_algebra(BergerParams(lam=2.0))
        self.assertIsNone(g_epsilon_frame(algebra, metric, vertical))

    def test_non_semisimple_variant_not_applicable(self):
        case = intro_table_cases()[2]
        report = verify_theorem_totally_geodesic(case.algebra, case.metric, case.vertical)
        self.assertEqual(report.outcome, PREMISES_FAIL)
        self.assertEqual(report.variants[0].outcome, NOT_APPLICABLE)


if __name__ == '__main__':
    unittest.main()
