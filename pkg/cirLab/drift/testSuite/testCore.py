'''
Tests for drift.core: parameter validation, the stationary gamma law and its
moments, and the transient mean/variance of the process started at r0.

Run with:
- python manage.py test drift
'''

import math

import numpy as np
from django.test import SimpleTestCase

from drift.core import (
    INVERSE_MEAN,
    MEAN,
    SECOND,
    ModelParams,
    StationaryLaw,
    stationary_density,
    stationary_expectation,
    stationary_mass,
    stationary_moment,
    stationary_variance,
    transient_mean,
    transient_variance,
    validate_params,
)
from drift.exceptions import FellerViolation, NegativeTime, NonPositiveParameter
from drift.simulate import SimConfig, derive_replication_seed, simulate_path

# ============================================================
# Parameters
# ============================================================

class ValidateParamsTestCase(SimpleTestCase):
    def test_valid_params(self):
        params = validate_params(1, 2, 0.5, 3)
        self.assertEqual(params, ModelParams(a=1.0, b=2.0, sigma=0.5, r0=3.0))
        self.assertEqual(params.long_run_mean, 0.5)

    def test_error_names_offending_parameter(self):
        for name in ("a", "b", "sigma", "r0"):
            raw = {"a": 1.0, "b": 1.0, "sigma": 1.0, "r0": 1.0}
            raw[name] = 0.0
            with self.assertRaises(NonPositiveParameter) as ctx:
                validate_params(**raw)
            self.assertEqual(ctx.exception.name, name)
            self.assertIn(name, str(ctx.exception))

    def test_rejects_nan_and_negative(self):
        with self.assertRaises(NonPositiveParameter):
            validate_params(float("nan"), 1, 1, 1)
        with self.assertRaises(NonPositiveParameter):
            validate_params(1, -1, 1, 1)
        with self.assertRaises(NonPositiveParameter):
            validate_params(1, 1, 1, "abc")

    def test_feller_condition(self):
        self.assertTrue(validate_params(1, 1, 1, 1).feller())
        self.assertFalse(validate_params(1, 1, 2, 1).feller())
        # boundary 2a = sigma^2 is not Feller
        self.assertFalse(validate_params(2, 1, 2, 1).mle_defined())


# ============================================================
# Stationary law
# ============================================================

class StationaryDensityTestCase(SimpleTestCase):
    def setUp(self):
        self.params = validate_params(1, 1, 1, 1)
        self.law = StationaryLaw.from_params(self.params)

    def test_shape_and_rate(self):
        self.assertEqual(self.law.alpha, 2.0)
        self.assertEqual(self.law.beta, 2.0)

    def test_value_at_one(self):
        self.assertAlmostEqual(stationary_density(1.0, self.law), 4.0 * math.exp(-2.0), places=14)
        self.assertAlmostEqual(stationary_density(1.0, self.law), 0.54134, places=5)

    def test_zero_outside_support(self):
        self.assertEqual(stationary_density(0.0, self.law), 0.0)
        self.assertEqual(stationary_density(-1.0, self.law), 0.0)

    def test_array_input(self):
        values = stationary_density(np.array([-1.0, 0.0, 1.0, 2.0]), self.law)
        self.assertEqual(values.shape, (4,))
        self.assertEqual(values[0], 0.0)
        self.assertAlmostEqual(values[3], 4.0 * 2.0 * math.exp(-4.0), places=14)

    def test_large_shape_does_not_overflow(self):
        law = StationaryLaw.from_params(validate_params(300, 1, 1, 1))
        value = stationary_density(300.0, law)
        self.assertTrue(math.isfinite(value))
        self.assertGreater(value, 0.0)

    def test_invalid_law(self):
        with self.assertRaises(NonPositiveParameter):
            StationaryLaw(alpha=0.0, beta=1.0)

    def test_normalization(self):
        for a, b, sigma in [(1, 1, 1), (1, 2, 1), (2, 3, 1), (3, 1, 2), (5, 0.5, 1)]:
            law = StationaryLaw.from_params(validate_params(a, b, sigma, 1))
            self.assertAlmostEqual(stationary_mass(law), 1.0, delta=1e-8)

    def test_normalization_non_feller(self):
        # integrable singularity at 0 when alpha < 1
        law = StationaryLaw.from_params(validate_params(1, 1, 2, 1))
        self.assertAlmostEqual(stationary_mass(law), 1.0, delta=1e-6)


class StationaryMomentTestCase(SimpleTestCase):
    def test_closed_forms(self):
        params = validate_params(1, 1, 1, 1)
        self.assertEqual(stationary_moment(MEAN, params), 1.0)
        self.assertEqual(stationary_moment(SECOND, params), 1.5)
        self.assertEqual(stationary_moment(INVERSE_MEAN, params), 2.0)
        self.assertEqual(stationary_variance(params), 0.5)

    def test_second_moment_non_feller(self):
        params = validate_params(1, 2, 3, 1)
        self.assertAlmostEqual(stationary_moment(SECOND, params), 1.375, places=14)

    def test_inverse_moment_needs_feller(self):
        with self.assertRaises(FellerViolation):
            stationary_moment(INVERSE_MEAN, validate_params(1, 1, 2, 1))

    def test_unknown_kind(self):
        with self.assertRaises(ValueError):
            stationary_moment("third", validate_params(1, 1, 1, 1))

    def test_quadrature_matches_closed_forms(self):
        params = validate_params(2, 3, 1, 1)
        law = StationaryLaw.from_params(params)
        self.assertAlmostEqual(stationary_expectation(lambda x: x, law), stationary_moment(MEAN, params), delta=1e-8)
        self.assertAlmostEqual(stationary_expectation(lambda x: x * x, law), stationary_moment(SECOND, params), delta=1e-8)
        self.assertAlmostEqual(stationary_expectation(lambda x: 1.0 / x, law), stationary_moment(INVERSE_MEAN, params), delta=1e-7)


# ============================================================
# Transient moments
# ============================================================

class TransientMomentTestCase(SimpleTestCase):
    def setUp(self):
        self.params = validate_params(1, 1, 1, 2)

    def test_starts_at_r0(self):
        self.assertEqual(transient_mean(0.0, self.params), 2.0)
        self.assertEqual(transient_variance(0.0, self.params), 0.0)

    def test_tends_to_stationary_values(self):
        self.assertAlmostEqual(transient_mean(60.0, self.params), 1.0, places=12)
        self.assertAlmostEqual(transient_variance(60.0, self.params), stationary_variance(self.params), places=12)

    def test_negative_time(self):
        with self.assertRaises(NegativeTime):
            transient_mean(-0.1, self.params)
        with self.assertRaises(NegativeTime):
            transient_variance(-0.1, self.params)

    def test_monte_carlo_mean_within_three_standard_errors(self):
        replications = 2000
        horizon = 1.0
        cfg = SimConfig(horizon=horizon, dt=0.01)
        ends = np.array([
            simulate_path(self.params, cfg, derive_replication_seed(11, i)).values[-1]
            for i in range(replications)
        ])
        standard_error = ends.std() / math.sqrt(replications)
        self.assertLess(abs(ends.mean() - transient_mean(horizon, self.params)), 3.0 * standard_error)
        self.assertAlmostEqual(ends.var() / transient_variance(horizon, self.params), 1.0, delta=0.15)
