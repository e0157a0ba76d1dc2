import unittest

import numpy as np
from hypothesis import given, settings, strategies as st

from geometry.catalog import heisenberg, sl2r, su2
from geometry.errors import (
    DegenerateMetricError,
    DegenerateRestrictionError,
    FrameError,
    InputError,
    InvalidInvolutionError,
)
from geometry.lie_core import killing_form
from geometry.semi_metric import (
    CartanInvolution,
    MetricTensor,
    OrthonormalFrame,
    cartan_killing_metric,
    check_involution,
    congruent,
    g_epsilon,
    involution_eigenspaces,
    orthonormal_frame,
    random_orthogonal,
    restrict,
    signature,
)


class TestMetricTensor(unittest.TestCase):

    def test_upper_triangle_is_used(self):
        metric = MetricTensor(np.array([[1.0, 2.0], [5.0, 3.0]]))
        np.testing.assert_array_equal(metric.matrix, [[1.0, 2.0], [2.0, 3.0]])

    def test_non_square_rejected(self):
        with self.assertRaises(InputError):
            MetricTensor(np.ones((2, 3)))

    def test_signature(self):
        self.assertEqual(signature(MetricTensor.identity(3)), (3, 0))
        self.assertEqual(signature(MetricTensor(np.diag([1.0, -1.0, -2.0]))), (1, 2))
        self.assertEqual(signature(MetricTensor(np.array([[0.0, 1.0], [1.0, 0.0]]))), (1, 1))

    def test_degenerate_signature(self):
        with self.assertRaises(DegenerateMetricError):
            signature(MetricTensor(np.diag([1.0, 0.0])))

    def test_restrict(self):
        """Restricting diag(1, -1) to the basis (1, 1), (1, -1) gives [[0, 2], [2, 0]]."""
        metric = MetricTensor(np.diag([1.0, -1.0]))
        restricted = restrict(metric, [np.array([1.0, 1.0]), np.array([1.0, -1.0])])
        np.testing.assert_allclose(restricted.matrix, [[0.0, 2.0], [2.0, 0.0]])

    def test_congruent(self):
        metric = MetricTensor(np.diag([2.0, 3.0]))
        change = np.array([[1.0, 1.0], [0.0, 1.0]])
        np.testing.assert_allclose(congruent(metric, change).matrix, [[2.0, 2.0], [2.0, 5.0]])

    @settings(max_examples=25, deadline=None)
    @given(st.integers(min_value=0, max_value=2 ** 32 - 1))
    def test_signature_survives_congruence(self, seed):
        rng = np.random.default_rng(seed)
        metric = MetricTensor(np.diag([1.0, -2.0, 3.0, -0.5]))
        change = random_orthogonal(rng, 4) @ np.diag(rng.uniform(0.5, 2.0, size=4)) @ random_orthogonal(rng, 4)
        self.assertEqual(signature(congruent(metric, change)), (2, 2))


class TestOrthonormalFrame(unittest.TestCase):

    def test_riemannian_frame(self):
        metric = MetricTensor(np.array([[2.0, 1.0, 0.0], [1.0, 3.0, 0.5], [0.0, 0.5, 1.0]]))
        frame = orthonormal_frame(metric)
        self.assertEqual(frame.causalities, (1, 1, 1))
        self.assertLess(frame.residual(metric), 1e-12)

    def test_null_basis_is_mixed(self):
        """A basis of null vectors still yields a frame once a pairing candidate is mixed in."""
        metric = MetricTensor(np.array([[0.0, 1.0], [1.0, 0.0]]))
        frame = orthonormal_frame(metric)
        self.assertEqual(sorted(frame.causalities), [-1, 1])
        self.assertLess(frame.residual(metric), 1e-12)

    def test_lorentzian_frame_from_seeds(self):
        metric = MetricTensor(np.diag([1.0, -1.0, 1.0]))
        seeds = np.array([[1.0, 0.0], [0.5, 1.0], [0.0, 0.0]])
        frame = orthonormal_frame(metric, seeds)
        self.assertEqual(frame.change.shape, (3, 2))
        self.assertEqual(sorted(frame.causalities), [-1, 1])
        self.assertLess(frame.residual(metric), 1e-12)

    def test_degenerate_restriction(self):
        metric = MetricTensor(np.diag([1.0, -1.0, 1.0]))
        with self.assertRaises(DegenerateRestrictionError):
            orthonormal_frame(metric, np.array([1.0, 1.0, 0.0]))

    def test_diagonal_metric(self):
        frame = orthonormal_frame(MetricTensor(np.diag([4.0, 1.0])))
        np.testing.assert_allclose(frame.change, np.diag([0.5, 1.0]))
        self.assertEqual(frame.causalities, (1, 1))

    def test_seed_order_is_kept(self):
        """A larger later pivot does not move diag(1, 4, 1) frame vectors out of seed order."""
        frame = orthonormal_frame(MetricTensor(np.diag([1.0, 4.0, 1.0])))
        np.testing.assert_allclose(frame.change, np.diag([1.0, 0.5, 1.0]))
        self.assertEqual(frame.seed_order(), (0, 1, 2))

    def test_null_seed_is_pivoted_past(self):
        metric = MetricTensor(np.diag([1.0, -1.0]))
        frame = orthonormal_frame(metric, np.array([[1.0, 1.0], [1.0, 0.0]]))
        self.assertEqual(frame.seed_order(), (1, 0))
        self.assertEqual(frame.causalities, (1, -1))
        self.assertLess(frame.residual(metric), 1e-12)

    def test_killing_metrics(self):
        algebra, _, _ = sl2r()
        frame = orthonormal_frame(MetricTensor(killing_form(algebra).matrix))
        self.assertEqual(frame.causalities, (-1, 1, 1))
        np.testing.assert_allclose(frame.change, np.eye(3) / (2 * np.sqrt(2)), atol=1e-9)
        with self.assertRaises(DegenerateRestrictionError):
            orthonormal_frame(MetricTensor(killing_form(heisenberg()).matrix))

    def test_random_orthogonal(self):
        q = random_orthogonal(np.random.default_rng(3), 4)
        np.testing.assert_allclose(q.T @ q, np.eye(4), atol=1e-12)


class TestCartanInvolution(unittest.TestCase):

    def test_sl2r_involution(self):
        algebra, _, theta = sl2r()
        report = check_involution(algebra, theta)
        self.assertTrue(report.passed)
        self.assertAlmostEqual(report.smallest_eigenvalue, 8.0)
        np.testing.assert_allclose(cartan_killing_metric(algebra, theta).matrix, 8.0 * np.eye(3), atol=1e-12)

    def test_compact_algebra_uses_identity(self):
        algebra, _ = su2()
        metric = cartan_killing_metric(algebra, CartanInvolution.identity(3))
        np.testing.assert_allclose(metric.matrix, 8.0 * np.eye(3), atol=1e-12)

    def test_indefinite_form_rejected(self):
        """diag(1, -1, -1) is an automorphism of su(2) but -B(·, θ·) is indefinite."""
        algebra, _ = su2()
        theta = CartanInvolution(np.diag([1.0, -1.0, -1.0]))
        report = check_involution(algebra, theta)
        self.assertLess(report.automorphism_residual, 1e-12)
        self.assertFalse(report.passed)
        with self.assertRaises(InvalidInvolutionError):
            cartan_killing_metric(algebra, theta)

    def test_killing_form_is_definite_on_eigenspaces(self):
        algebra, _, theta = sl2r()
        plus, minus = involution_eigenspaces(theta)
        form = killing_form(algebra).matrix
        self.assertTrue(np.all(np.linalg.eigvalsh(plus.T @ form @ plus) < 0))
        self.assertTrue(np.all(np.linalg.eigvalsh(minus.T @ form @ minus) > 0))

    def test_eigenspaces(self):
        _, _, theta = sl2r()
        plus, minus = involution_eigenspaces(theta)
        self.assertEqual(plus.shape, (3, 1))
        self.assertEqual(minus.shape, (3, 2))


class TestGEpsilon(unittest.TestCase):

    def test_signs_in_frame(self):
        metric = MetricTensor.identity(3)
        frame = OrthonormalFrame(np.eye(3), (1, 1, 1))
        result = g_epsilon(metric, frame, (1, -1, 1))
        np.testing.assert_allclose(result.matrix, np.diag([1.0, -1.0, 1.0]))

    def test_rotated_frame(self):
        metric = MetricTensor.identity(2)
        angle = 0.4
        change = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])
        result = g_epsilon(metric, OrthonormalFrame(change, (1, 1)), (1, -1))
        self.assertAlmostEqual(result(change[:, 0], change[:, 0]), 1.0)
        self.assertAlmostEqual(result(change[:, 1], change[:, 1]), -1.0)
        self.assertAlmostEqual(result(change[:, 0], change[:, 1]), 0.0)

    def test_invalid_signs(self):
        frame = OrthonormalFrame(np.eye(2), (1, 1))
        with self.assertRaises(InputError):
            g_epsilon(MetricTensor.identity(2), frame, (1, 0))

    def test_non_orthonormal_frame(self):
        frame = OrthonormalFrame(2.0 * np.eye(2), (1, 1))
        with self.assertRaises(FrameError):
            g_epsilon(MetricTensor.identity(2), frame, (1, 1))


if __name__ == '__main__':
    unittest.main()
