'''
Tests for drift.estimators: hand-computed estimates, degenerate inputs, the
(alpha, mu) maps, algebraic identities and the exact residual decomposition.
'''

import numpy as np
from django.test import SimpleTestCase

from drift.core import validate_params
from drift.estimators import (
    ALTERNATIVE,
    MLE,
    DriftEstimate,
    alt_alpha_mu,
    alt_estimate,
    estimate,
    mle_alpha_mu,
    mle_estimate,
    residual_decomposition,
    resolve_estimator,
    to_alpha_mu,
)
from drift.exceptions import (
    DegenerateDenominator,
    DriftError,
    MissingNoise,
    NonPositiveParameter,
    UnreliableInverse,
    ZeroMeanReversion,
)
from drift.pathstats import path_statistics
from drift.simulate import IMPLICIT, Path, SimConfig, derive_replication_seed, integrate_path, simulate_path


def grid_path(values, dt):
    values = np.asarray(values, dtype=float)
    return Path(times=np.arange(len(values)) * dt, values=values)


class HandPathTestCase(SimpleTestCase):
    def setUp(self):
        self.stats = path_statistics(grid_path([1.0, 2.0, 1.0], 0.5))

    def test_mle(self):
        est = mle_estimate(self.stats)
        self.assertEqual(est.kind, MLE)
        self.assertAlmostEqual(est.denominator, 0.125, places=14)
        self.assertAlmostEqual(est.a_est, 6.0, places=12)
        self.assertAlmostEqual(est.b_est, 4.0, places=12)

    def test_alternative(self):
        est = alt_estimate(self.stats, 1.0)
        self.assertEqual(est.kind, ALTERNATIVE)
        self.assertAlmostEqual(est.denominator, 0.25, places=14)
        self.assertAlmostEqual(est.a_est, 4.5, places=12)
        self.assertAlmostEqual(est.b_est, 3.0, places=12)

    def test_dispatch(self):
        self.assertEqual(estimate(MLE, self.stats, 1.0), mle_estimate(self.stats))
        self.assertEqual(estimate(ALTERNATIVE, self.stats, 1.0), alt_estimate(self.stats, 1.0))
        with self.assertRaises(DriftError):
            estimate("moments", self.stats, 1.0)

    def test_alpha_mu(self):
        mapped = to_alpha_mu(mle_estimate(self.stats))
        direct = mle_alpha_mu(self.stats)
        self.assertAlmostEqual(mapped.alpha_est, 4.0, places=12)
        self.assertAlmostEqual(mapped.mu_est, 1.5, places=12)
        self.assertAlmostEqual(direct.alpha_est, mapped.alpha_est, places=12)
        self.assertAlmostEqual(direct.mu_est, mapped.mu_est, places=12)

        alt = alt_alpha_mu(self.stats, 1.0)
        self.assertAlmostEqual(alt.alpha_est, 3.0, places=12)
        self.assertAlmostEqual(alt.mu_est, 1.5, places=12)

    def test_sigma_must_be_positive(self):
        with self.assertRaises(NonPositiveParameter):
            alt_estimate(self.stats, 0.0)


class DegenerateInputTestCase(SimpleTestCase):
    def test_constant_path(self):
        stats = path_statistics(grid_path([1.0] * 5, 0.25))
        with self.assertRaises(DegenerateDenominator) as ctx:
            mle_estimate(stats)
        self.assertEqual(ctx.exception.kind, "degenerate_denominator")
        with self.assertRaises(DegenerateDenominator):
            alt_estimate(stats, 1.0)

    def test_path_at_zero(self):
        stats = path_statistics(grid_path([1.0, 0.0, 1.0], 0.5))
        with self.assertRaises(UnreliableInverse):
            mle_estimate(stats)
        # the alternative estimator never needs 1/r
        self.assertGreater(alt_estimate(stats, 1.0).a_est, 0.0)

    def test_zero_mean_reversion(self):
        with self.assertRaises(ZeroMeanReversion):
            to_alpha_mu(DriftEstimate(a_est=1.0, b_est=0.0, kind=MLE, denominator=1.0))

    def test_aliases(self):
        self.assertEqual(resolve_estimator("alt"), ALTERNATIVE)
        self.assertEqual(resolve_estimator(" MLE "), MLE)
        with self.assertRaises(DriftError):
            resolve_estimator("ols")


# ============================================================
# Identities
# ============================================================

class IdentityTestCase(SimpleTestCase):
    def setUp(self):
        rng = np.random.default_rng(99)
        self.paths = [
            grid_path(rng.uniform(0.1, 4.0, size=int(rng.integers(3, 80))), float(rng.uniform(0.01, 0.5)))
            for _ in range(200)
        ]

    def test_alternative_a_is_b_times_time_average(self):
        for path in self.paths:
            stats = path_statistics(path)
            est = alt_estimate(stats, 1.3)
            self.assertAlmostEqual(est.a_est, est.b_est * stats.int_r / stats.horizon,
                                   delta=1e-10 * max(1.0, abs(est.a_est)))

    def test_scaling_equivariance(self):
        c = 4.0
        for path in self.paths:
            scaled = Path(times=path.times, values=path.values * c)
            stats, scaled_stats = path_statistics(path), path_statistics(scaled)

            base, moved = alt_estimate(stats, 0.7), alt_estimate(scaled_stats, 0.7 * 2.0)
            self.assertEqual(moved.a_est, c * base.a_est)
            self.assertEqual(moved.b_est, base.b_est)

            base, moved = mle_estimate(stats), mle_estimate(scaled_stats)
            self.assertEqual(moved.a_est, c * base.a_est)
            self.assertEqual(moved.b_est, base.b_est)


class ResidualDecompositionTestCase(SimpleTestCase):
    def test_identity_on_simulated_paths(self):
        params = validate_params(2, 1, 1, 2)
        cfg = SimConfig(horizon=50.0, dt=0.01, store_noise=True)
        for i in range(20):
            path = simulate_path(params, cfg, derive_replication_seed(314, i))
            est = mle_estimate(path_statistics(path))
            residual = residual_decomposition(path, params)
            self.assertLessEqual(abs((est.a_est - params.a) - residual.r_a), 1e-8 * max(1.0, abs(residual.r_a)))
            self.assertLessEqual(abs((est.b_est - params.b) - residual.r_b), 1e-8 * max(1.0, abs(residual.r_b)))

    def test_residual_magnitude_at_long_horizon(self):
        params = validate_params(1, 1, 1, 1)
        cfg = SimConfig(horizon=200.0, dt=0.01, scheme=IMPLICIT, store_noise=True)
        for i in range(100):
            path = simulate_path(params, cfg, derive_replication_seed(20240601, i))
            self.assertLess(abs(residual_decomposition(path, params).r_a), 0.5, i)

    def test_zero_noise_recovers_drift(self):
        params = validate_params(1, 1, 1, 2)
        cfg = SimConfig(horizon=5.0, dt=0.01, store_noise=True)
        path = integrate_path(params, cfg, np.zeros(cfg.steps))
        residual = residual_decomposition(path, params)
        self.assertEqual(residual.r_a, 0.0)
        self.assertEqual(residual.r_b, 0.0)
        est = mle_estimate(path_statistics(path))
        self.assertAlmostEqual(est.a_est, 1.0, places=9)
        self.assertAlmostEqual(est.b_est, 1.0, places=9)

    def test_needs_noise(self):
        path = simulate_path(validate_params(2, 1, 1, 1), SimConfig(horizon=1.0, dt=0.01), 1)
        with self.assertRaises(MissingNoise):
            residual_decomposition(path, validate_params(2, 1, 1, 1))
