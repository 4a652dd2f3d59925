import math
import os
import unittest
import unittest.mock

import dclock.config as config
import dclock.optimizer as optimizer
import dclock.ramsey as ramsey


def uncertainty(alpha, Theta, T):
    return optimizer.UncertaintyParams(alpha, 0.0, Theta, T)


class RelativeUncertaintyTests(unittest.TestCase):

    def test_quarter_period(self):
        u = uncertainty(0.1, math.pi / 20, 10.0)
        self.assertAlmostEqual(0.5 * math.pi * math.exp(-1), optimizer.relative_uncertainty(u), places=14)

    def test_zeros(self):
        # The fringe slope vanishes on the fringe maxima
        for phase in (0.0, 2 * math.pi):
            self.assertAlmostEqual(0.0, optimizer.relative_uncertainty(uncertainty(0.1, phase / 10, 10.0)), places=14)

    def test_pole(self):
        # Without dephasing the probability vanishes at Theta T = pi
        with self.assertRaises(optimizer.PoleError):
            optimizer.relative_uncertainty(uncertainty(0.0, math.pi / 10, 10.0))

        # Dephasing keeps the same point finite
        self.assertAlmostEqual(0.0, optimizer.relative_uncertainty(uncertainty(0.1, math.pi / 10, 10.0)), places=12)

    def test_theta_is_shifted(self):
        u = optimizer.UncertaintyParams(alpha=0.2, beta=0.3, theta=0.8, T=4.0)
        self.assertAlmostEqual(0.5, u.Theta)

    def test_printed_form(self):
        above = uncertainty(0.1, 0.1, 10.0)
        below = uncertainty(0.1, -0.1, 10.0)

        # The published form keeps the sign of the sine
        self.assertAlmostEqual(optimizer.relative_uncertainty(above), optimizer.relative_uncertainty_printed(above))
        self.assertAlmostEqual(-optimizer.relative_uncertainty(below), optimizer.relative_uncertainty_printed(below))

    def test_invalid(self):
        with self.assertRaises(ramsey.InvalidParameter):
            optimizer.UncertaintyParams(-0.1, 0.0, 0.0, 1.0)
        with self.assertRaises(ramsey.InvalidParameter):
            optimizer.UncertaintyParams(0.1, 0.0, 0.0, 0.0)
        with self.assertRaises(ramsey.InvalidParameter):
            optimizer.stationarity_residual(1.0, 0.0, 1.0, -0.1)
        with self.assertRaises(ramsey.InvalidParameter):
            optimizer.stationarity_residual(1.0, 1.0, 1.0, float('inf'))


class StationarityResidualTests(unittest.TestCase):

    def _numeric_residual(self, T, alpha, Theta, Lambda, h=1e-6):
        def objective(t):
            return optimizer.relative_uncertainty(uncertainty(alpha, Theta, t)) + math.pi * (Lambda / alpha) / t

        return (objective(T + h) - objective(T - h)) / (2 * h) / alpha

    def test_matches_derivative(self):
        for T, alpha, Theta, Lambda in ((3.0, 0.5, 0.5, 0.0), (3.0, 0.5, 0.5, -0.2), (1.2, 2.0, -2.0, -0.3),
                                        (7.0, 0.25, 0.1, 0.4)):
            self.assertAlmostEqual(self._numeric_residual(T, alpha, Theta, Lambda),
                                   optimizer.stationarity_residual(T, alpha, Theta, Lambda), delta=1e-6)

    def test_scale_invariance(self):
        # The residual only depends on alpha T and Theta / alpha
        self.assertAlmostEqual(optimizer.stationarity_residual(2.0, 1.0, 1.0, -0.3),
                               optimizer.stationarity_residual(0.2, 10.0, 10.0, -0.3), places=12)

    def test_printed_polynomial(self):
        # Where sin(Theta T) > 0 the published polynomial is a positive multiple of the residual
        for T, alpha, Theta, Lambda in ((1.5, 1.0, 1.0, -0.2), (2.5, 1.0, 1.0, 0.0), (0.7, 2.0, 3.0, -0.5)):
            x, r = alpha * T, Theta / alpha
            denominator = 1 + math.exp(-x) * math.cos(r * x)
            scale = 2 * x * x * denominator ** 2 / math.pi
            self.assertAlmostEqual(scale * optimizer.stationarity_residual(T, alpha, Theta, Lambda),
                                   optimizer.printed_stationarity_residual(T, alpha, Theta, Lambda), places=12)


class StationaryPointTests(unittest.TestCase):

    def test_minimum_and_maximum(self):
        points = optimizer.stationary_points(1.0, 1.0, -0.316)
        minima = [s.alphaT for s in points if s.kind == 'minimum']
        maxima = [s.alphaT for s in points if s.kind == 'maximum']

        self.assertTrue(any(abs(x - 2.839) < 5e-3 for x in minima))
        self.assertTrue(any(abs(x - 1.849) < 5e-3 for x in maxima))
        for s in points:
            self.assertLessEqual(abs(s.residual), config.RESIDUAL_TOLERANCE)
            self.assertEqual(-0.316, s.Lambda)

        # Ordered by Ramsey time
        self.assertEqual(sorted(s.T_star for s in points), [s.T_star for s in points])

    def test_unconstrained_points_are_maxima(self):
        points = optimizer.stationary_points(1.0, 1.0, 0.0)

        # Without the constraint only maxima of the uncertainty remain; the kinks at sin = 0 are not roots
        self.assertTrue(points)
        self.assertTrue(all(s.kind == 'maximum' for s in points))
        self.assertAlmostEqual(1.039, points[0].alphaT, delta=5e-3)
        for s in points:
            self.assertGreater(abs(math.sin(s.alphaT)), optimizer.KINK_TOLERANCE)

    def test_solve_optimal_T(self):
        solution = optimizer.solve_optimal_T(1.0, -1.0, -0.3)
        self.assertEqual('minimum', solution.kind)
        self.assertAlmostEqual(2.89, solution.alphaT, delta=0.02)
        self.assertEqual(solution.alphaT, solution.T_star)

        solution = optimizer.solve_optimal_T(1.0, 1.0, -0.1)
        self.assertAlmostEqual(5.2219, solution.alphaT, delta=1e-3)

    def test_rescaled_alpha(self):
        slow = optimizer.solve_optimal_T(1.0, 1.0, -0.3)
        fast = optimizer.solve_optimal_T(10.0, 10.0, -0.3)

        # Same alpha T, Ramsey time scaled by 1/alpha
        self.assertAlmostEqual(slow.alphaT, fast.alphaT, places=12)
        self.assertAlmostEqual(slow.T_star / 10, fast.T_star, places=12)

    def test_no_interior_root(self):
        # No constrained minimum without the constraint or with a strong one
        for Lambda in (0.0, -1.0, -10.0):
            with self.assertRaises(optimizer.NoInteriorRoot):
                optimizer.solve_optimal_T(1.0, 1.0, Lambda)

    def test_invalid_bracket(self):
        with self.assertRaises(ramsey.InvalidParameter):
            optimizer.stationary_points(1.0, 1.0, -0.3, bracket=(2.0, 1.0))
        with self.assertRaises(ramsey.InvalidParameter):
            optimizer.stationary_points(1.0, 1.0, -0.3, bracket=(0.0, 1.0))
        with self.assertRaises(ramsey.InvalidParameter):
            optimizer.stationary_points(1.0, 1.0, -0.3, subdivisions=0)


class SweepTests(unittest.TestCase):

    def test_default_lambda_grid(self):
        grid = optimizer.default_lambda_grid()
        self.assertEqual(10, len(grid))
        self.assertEqual(0.0, grid[0])
        self.assertAlmostEqual(-0.1, grid[1])
        self.assertAlmostEqual(-10.0, grid[-1])
        self.assertTrue(all(b < a for a, b in zip(grid, grid[1:])))

    def test_order_unity(self):
        result = optimizer.order_unity_sweep()

        # One row per cell, in grid order
        self.assertEqual(3 * 10 * 2, len(result.rows))
        self.assertEqual((0.5, 0.0, 1), result.rows[0][:3])
        self.assertEqual((0.5, 0.0, -1), result.rows[1][:3])
        self.assertEqual(2.0, result.rows[-1].alpha)

        # Roots only appear with alpha T of order unity
        self.assertGreater(result.summary.roots, 0)
        self.assertGreaterEqual(result.summary.minimum, 0.1)
        self.assertLessEqual(result.summary.maximum, 10.0)
        self.assertEqual([], optimizer.outside_band(result))

        # The unconstrained cells have no interior root
        for row in result.rows:
            if row.lambda_multiplier == 0.0:
                self.assertEqual(optimizer.STATUS_NO_ROOT, row.status)
                self.assertIsNone(row.alpha_t)
            if row.status == optimizer.STATUS_OK:
                self.assertAlmostEqual(row.alpha * row.t_star, row.alpha_t, places=12)

    def test_alpha_scaling(self):
        lambdas = (0.0, -0.1, -0.3)
        base = optimizer.order_unity_sweep((0.5, 1.0), lambdas)
        scaled = optimizer.order_unity_sweep((5.0, 10.0), lambdas)
        self.assertEqual([row.alpha_t for row in base.rows], [row.alpha_t for row in scaled.rows])
        self.assertEqual([row.status for row in base.rows], [row.status for row in scaled.rows])

    def test_parallel_sweep_is_deterministic(self):
        lambdas = (-0.1, -0.3)
        serial = optimizer.order_unity_sweep((0.5, 2.0), lambdas)
        with unittest.mock.patch.dict(os.environ, {config.THREADS_ENV_VAR: '4'}):
            parallel = optimizer.order_unity_sweep((0.5, 2.0), lambdas)
        self.assertEqual(serial.rows, parallel.rows)

    def test_printed_comparison(self):
        result = optimizer.order_unity_sweep((1.0,), (-0.316, -0.1), (1,))
        agreeing, disagreeing = result.rows

        # With sin(Theta T) > 0 at the root the published forms agree with the implemented ones
        self.assertGreater(math.sin(agreeing.alpha_t), 0)
        self.assertAlmostEqual(agreeing.uncertainty, agreeing.uncertainty_printed, places=12)
        self.assertLessEqual(abs(agreeing.printed_residual), optimizer.PRINTED_AGREEMENT_TOLERANCE)

        # With sin(Theta T) < 0 the signed uncertainty flips sign
        # and the published condition misses the root by -4 Lambda D^2
        self.assertLess(math.sin(disagreeing.alpha_t), 0)
        self.assertAlmostEqual(-disagreeing.uncertainty, disagreeing.uncertainty_printed, places=12)
        x = disagreeing.alpha_t
        denominator = 1 + math.exp(-x) * math.cos(x)
        self.assertAlmostEqual(0.4 * denominator ** 2, disagreeing.printed_residual, delta=1e-6)

        self.assertEqual([agreeing], optimizer.printed_agreement(result))

        # Rows without a root carry no comparison
        empty = optimizer.order_unity_sweep((1.0,), (0.0,), (1,)).rows[0]
        self.assertEqual((None, None, None), empty[-3:])

    def test_summary(self):
        rows = [
            optimizer.SweepRow(1.0, -0.1, 1, 2.0, 2.0, 0.0, optimizer.STATUS_OK),
            optimizer.SweepRow(1.0, -0.2, 1, 4.0, 4.0, 0.0, optimizer.STATUS_OK),
            optimizer.SweepRow(1.0, -0.3, 1, 3.0, 3.0, 0.0, optimizer.STATUS_OK),
            optimizer.SweepRow(1.0, 0.0, 1, None, None, None, optimizer.STATUS_NO_ROOT),
        ]
        self.assertEqual(optimizer.SweepSummary(3, 2.0, 3.0, 4.0), optimizer.summarize(rows))
        self.assertEqual(optimizer.SweepSummary(0, None, None, None), optimizer.summarize(rows[3:]))

    def test_empty_grid(self):
        with self.assertRaises(ramsey.InvalidParameter):
            optimizer.order_unity_sweep(alphas=())
