'''
Tests for drift.pathstats: the left-endpoint path integrals, checkpoint
prefixes, the inverse floor and the ergodic time averages on long paths.
'''

import numpy as np
from django.test import SimpleTestCase

from drift.core import validate_params
from drift.exceptions import DriftError, EmptyPath, MissingNoise, OffGridCheckpoint
from drift.pathstats import (
    checkpoint_statistics,
    checkpoint_steps,
    ergodic_gaps,
    path_statistics,
    stochastic_sums,
)
from drift.simulate import IMPLICIT, Path, SimConfig, simulate_path


def grid_path(values, dt, noise=None):
    values = np.asarray(values, dtype=float)
    return Path(times=np.arange(len(values)) * dt, values=values, noise=noise)


class PathStatisticsTestCase(SimpleTestCase):
    def test_three_point_path(self):
        stats = path_statistics(grid_path([1.0, 2.0, 1.0], 0.5))
        self.assertEqual(stats.horizon, 1.0)
        self.assertAlmostEqual(stats.int_r, 1.5, places=15)
        self.assertAlmostEqual(stats.int_r2, 2.5, places=15)
        self.assertAlmostEqual(stats.int_inv_r, 0.75, places=15)
        self.assertAlmostEqual(stats.int_dr_over_r, 0.5, places=15)
        self.assertEqual((stats.r_start, stats.r_end, stats.min_value), (1.0, 1.0, 1.0))
        self.assertTrue(stats.inv_reliable)
        self.assertAlmostEqual(stats.variance_gap, 0.25, places=15)
        self.assertAlmostEqual(stats.inverse_gap, 0.125, places=15)

    def test_linear_path_quadrature(self):
        n = 100000
        times = np.arange(n + 1) / n
        stats = path_statistics(Path(times=times, values=1.0 + times))
        self.assertAlmostEqual(stats.int_r, 1.5, delta=1e-4)
        self.assertAlmostEqual(stats.int_r2, 7.0 / 3.0, delta=1e-4)

    def test_constant_path_has_zero_gaps(self):
        stats = path_statistics(grid_path([3.0] * 11, 0.1))
        self.assertAlmostEqual(stats.variance_gap, 0.0, places=12)
        self.assertAlmostEqual(stats.inverse_gap, 0.0, places=12)
        self.assertEqual(stats.int_dr_over_r, 0.0)

    def test_floor_hides_inverse_integrals(self):
        stats = path_statistics(grid_path([1.0, 0.0, 1.0], 0.5))
        self.assertFalse(stats.inv_reliable)
        self.assertIsNone(stats.int_inv_r)
        self.assertIsNone(stats.int_dr_over_r)
        self.assertIsNone(stats.inverse_gap)
        self.assertEqual(stats.min_value, 0.0)

        stats = path_statistics(grid_path([1.0, 0.5, 1.0], 0.5), inv_floor=0.6)
        self.assertFalse(stats.inv_reliable)

    def test_negative_floor(self):
        with self.assertRaises(DriftError):
            path_statistics(grid_path([1.0, 2.0], 0.5), inv_floor=-1.0)

    def test_empty_path(self):
        with self.assertRaises(EmptyPath):
            path_statistics(grid_path([1.0], 0.5))

    def test_cauchy_schwarz_gaps_are_non_negative(self):
        rng = np.random.default_rng(1234)
        for _ in range(1000):
            steps = int(rng.integers(2, 60))
            values = rng.uniform(0.05, 5.0, size=steps + 1)
            stats = path_statistics(grid_path(values, float(rng.uniform(0.001, 1.0))))
            self.assertGreaterEqual(stats.variance_gap, 0.0)
            self.assertGreaterEqual(stats.inverse_gap, 0.0)


class CheckpointTestCase(SimpleTestCase):
    def setUp(self):
        self.path = simulate_path(validate_params(1, 1, 1, 1), SimConfig(horizon=5.0, dt=0.01), 21)

    def test_steps(self):
        self.assertEqual(checkpoint_steps(self.path, [1.0, 2.5, 5.0]), [100, 250, 500])

    def test_prefix_matches_truncated_path(self):
        prefixes = checkpoint_statistics(self.path, [1.0, 2.5, 5.0])
        self.assertEqual(prefixes[0], path_statistics(self.path.truncated(100)))
        for stats, m in zip(prefixes, [100, 250, 500]):
            whole = path_statistics(self.path.truncated(m))
            self.assertEqual((stats.horizon, stats.r_end, stats.min_value, stats.inv_reliable),
                             (whole.horizon, whole.r_end, whole.min_value, whole.inv_reliable))
            for name in ("int_r", "int_r2", "int_inv_r", "int_dr_over_r"):
                if whole.inv_reliable or name in ("int_r", "int_r2"):
                    self.assertAlmostEqual(getattr(stats, name), getattr(whole, name),
                                           delta=1e-13 * max(1.0, abs(getattr(whole, name))), msg=name)

    def test_prefixes_grow(self):
        prefixes = checkpoint_statistics(self.path, [1.0, 2.5, 5.0])
        self.assertLess(prefixes[0].int_r, prefixes[1].int_r)
        self.assertLess(prefixes[1].int_r, prefixes[2].int_r)

    def test_off_grid(self):
        with self.assertRaises(OffGridCheckpoint):
            checkpoint_steps(self.path, [0.005])
        with self.assertRaises(OffGridCheckpoint):
            checkpoint_steps(self.path, [6.0])
        with self.assertRaises(OffGridCheckpoint):
            checkpoint_steps(self.path, [0.0])

    def test_descending(self):
        with self.assertRaises(DriftError):
            checkpoint_steps(self.path, [2.0, 1.0])


class StochasticSumsTestCase(SimpleTestCase):
    def test_hand_values(self):
        path = grid_path([1.0, 4.0, 1.0], 0.5, noise=np.array([0.5, -1.0]))
        s_inv, s_sqrt = stochastic_sums(path)
        self.assertAlmostEqual(s_inv, 0.5 / 1.0 - 1.0 / 2.0, places=15)
        self.assertAlmostEqual(s_sqrt, 0.5 * 1.0 - 1.0 * 2.0, places=15)
        s_inv, s_sqrt = stochastic_sums(path, steps=1)
        self.assertEqual((s_inv, s_sqrt), (0.5, 0.5))

    def test_discrete_ito_identity(self):
        params = validate_params(3, 1, 1, 2)
        path = simulate_path(params, SimConfig(horizon=50.0, dt=0.01, store_noise=True), 17)
        stats = path_statistics(path)
        self.assertGreater(stats.min_value, 0.0)
        s_inv, _ = stochastic_sums(path)
        rhs = params.a * stats.int_inv_r - params.b * stats.horizon + params.sigma * s_inv
        self.assertAlmostEqual(stats.int_dr_over_r, rhs, delta=1e-10 * max(1.0, abs(rhs)))

    def test_statistics_ignore_stored_noise(self):
        params = validate_params(1, 1, 1, 1)
        plain = simulate_path(params, SimConfig(horizon=5.0, dt=0.01), 8)
        stored = simulate_path(params, SimConfig(horizon=5.0, dt=0.01, store_noise=True), 8)
        self.assertEqual(path_statistics(plain), path_statistics(stored))
        self.assertEqual(checkpoint_statistics(plain, [1.0, 5.0]), checkpoint_statistics(stored, [1.0, 5.0]))

    def test_needs_noise(self):
        with self.assertRaises(MissingNoise):
            stochastic_sums(grid_path([1.0, 2.0], 0.5))


# ============================================================
# Ergodic time averages on long paths
# ============================================================

class ErgodicLimitTestCase(SimpleTestCase):
    def test_feller_limits(self):
        params = validate_params(1, 1, 1, 1)
        # the implicit scheme never touches zero, so 1/r stays defined on the whole path
        path = simulate_path(params, SimConfig(horizon=2000.0, dt=0.01, scheme=IMPLICIT), 20240601)
        gaps = ergodic_gaps(path_statistics(path), params)
        self.assertLess(gaps.mean, 0.15)
        self.assertLess(gaps.second, 0.15)
        self.assertIsNotNone(gaps.inverse)
        self.assertLess(gaps.inverse, 0.15)

    def test_second_moment_beyond_feller(self):
        params = validate_params(1, 2, 3, 1)
        path = simulate_path(params, SimConfig(horizon=2000.0, dt=0.01), 20240601)
        gaps = ergodic_gaps(path_statistics(path), params)
        self.assertLess(gaps.second, 0.3)
        self.assertIsNone(gaps.inverse)
