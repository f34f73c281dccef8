'''
Tests for drift.simulate: grid construction, both discretization schemes,
noise handling and the replication seed derivation.
'''

import math

import numpy as np
from django.test import SimpleTestCase

from drift.core import validate_params
from drift.exceptions import DriftError, EmptyPath, NonPositiveParameter, SchemeInadmissible
from drift.simulate import (
    EULER,
    IMPLICIT,
    Path,
    SimConfig,
    derive_replication_seed,
    integrate_path,
    mix64,
    resolve_scheme,
    simulate_path,
    wiener_increments,
)

# ============================================================
# Seeds
# ============================================================

class SeedDerivationTestCase(SimpleTestCase):
    def test_mix64_reference_values(self):
        self.assertEqual(mix64(0), 0)
        # first output of a SplitMix64 generator seeded with 0
        self.assertEqual(mix64(0x9E3779B97F4A7C15), 0xE220A8397B1DCDAF)

    def test_derived_seeds(self):
        self.assertEqual(derive_replication_seed(42, 0), 12058926934050108962)
        self.assertEqual(derive_replication_seed(42, 0), mix64(42))
        self.assertEqual(derive_replication_seed(42, 1), 13679457532755275413)
        self.assertEqual(derive_replication_seed(42, 2), 15664533255536094640)
        self.assertEqual(derive_replication_seed(7, 3), 16731224329868871185)

    def test_seeds_are_distinct(self):
        seeds = {derive_replication_seed(20240601, i) for i in range(10000)}
        self.assertEqual(len(seeds), 10000)

    def test_negative_index(self):
        with self.assertRaises(ValueError):
            derive_replication_seed(42, -1)

    def test_negative_base_seed_is_masked(self):
        self.assertEqual(derive_replication_seed(-1, 0), derive_replication_seed(2 ** 64 - 1, 0))


# ============================================================
# Configuration
# ============================================================

class SimConfigTestCase(SimpleTestCase):
    def test_steps(self):
        self.assertEqual(SimConfig(horizon=10.0, dt=0.01).steps, 1000)
        self.assertEqual(SimConfig(horizon=200.0, dt=0.01).steps, 20000)

    def test_invalid(self):
        with self.assertRaises(NonPositiveParameter) as ctx:
            SimConfig(horizon=1.0, dt=0.0)
        self.assertEqual(ctx.exception.name, "dt")
        with self.assertRaises(NonPositiveParameter):
            SimConfig(horizon=-1.0, dt=0.01)
        with self.assertRaises(DriftError):
            SimConfig(horizon=0.01, dt=0.1)
        with self.assertRaises(DriftError):
            SimConfig(horizon=1.0, dt=0.1, scheme="milstein")

    def test_scheme_aliases(self):
        self.assertEqual(resolve_scheme("euler"), EULER)
        self.assertEqual(resolve_scheme("Implicit"), IMPLICIT)
        self.assertEqual(resolve_scheme(IMPLICIT), IMPLICIT)
        with self.assertRaises(DriftError):
            resolve_scheme("exact")


# ============================================================
# Schemes
# ============================================================

class EulerSchemeTestCase(SimpleTestCase):
    def setUp(self):
        self.params = validate_params(1, 1, 1, 1)
        self.cfg = SimConfig(horizon=10.0, dt=0.01)

    def test_grid(self):
        path = simulate_path(self.params, self.cfg, 7)
        self.assertEqual(len(path.values), 1001)
        self.assertEqual(path.steps, 1000)
        self.assertEqual(path.times[0], 0.0)
        self.assertAlmostEqual(path.horizon, 10.0, places=12)
        self.assertEqual(path.values[0], 1.0)
        self.assertEqual(path.scheme_used, EULER)
        self.assertIsNone(path.noise)

    def test_deterministic(self):
        first = simulate_path(self.params, self.cfg, 7)
        second = simulate_path(self.params, self.cfg, 7)
        np.testing.assert_array_equal(first.values, second.values)
        other = simulate_path(self.params, self.cfg, 8)
        self.assertFalse(np.array_equal(first.values, other.values))

    def test_non_negative_outside_feller(self):
        params = validate_params(1, 1, 3, 0.1)
        path = simulate_path(params, SimConfig(horizon=50.0, dt=0.01), 3)
        self.assertTrue(np.all(path.values >= 0.0))
        # sigma = 3 pulls the path onto the boundary at some point
        self.assertEqual(path.values.min(), 0.0)

    def test_zero_noise_follows_discrete_ode(self):
        params = validate_params(1, 1, 1, 2)
        cfg = SimConfig(horizon=1.0, dt=0.01)
        path = integrate_path(params, cfg, np.zeros(cfg.steps))
        for n in (1, 10, 100):
            expected = (1.0 - 0.01) ** n * (2.0 - 1.0) + 1.0
            self.assertAlmostEqual(path.values[n], expected, places=12)

    def test_one_step_by_hand(self):
        cfg = SimConfig(horizon=0.01, dt=0.01)
        path = integrate_path(self.params, cfg, np.array([0.1]))
        self.assertAlmostEqual(path.values[1], 1.1, places=15)

    def test_recurrence_against_stored_noise(self):
        params = validate_params(1, 1, 2, 1)
        path = simulate_path(params, SimConfig(horizon=20.0, dt=0.01, store_noise=True), 11)
        for i in range(path.steps):
            r, dw = float(path.values[i]), float(path.noise[i])
            expected = max(r + (params.a - params.b * r) * 0.01 + params.sigma * math.sqrt(r) * dw, 0.0)
            self.assertEqual(path.values[i + 1], expected, i)

    def test_storing_noise_leaves_the_path_unchanged(self):
        plain = simulate_path(self.params, self.cfg, 7)
        stored = simulate_path(self.params, SimConfig(horizon=10.0, dt=0.01, store_noise=True), 7)
        np.testing.assert_array_equal(plain.values, stored.values)

    def test_wrong_noise_length(self):
        with self.assertRaises(DriftError):
            integrate_path(self.params, self.cfg, np.zeros(10))

    def test_stored_noise_matches_generator(self):
        cfg = SimConfig(horizon=1.0, dt=0.01, store_noise=True)
        path = simulate_path(self.params, cfg, 5)
        self.assertTrue(path.has_noise)
        np.testing.assert_array_equal(path.noise, wiener_increments(5, 100, 0.01))

    def test_increments_scale(self):
        dw = wiener_increments(1, 100000, 0.01)
        self.assertAlmostEqual(dw.std(), math.sqrt(0.01), delta=0.002)


class ImplicitSchemeTestCase(SimpleTestCase):
    def test_inadmissible(self):
        with self.assertRaises(SchemeInadmissible):
            simulate_path(validate_params(1, 1, 3, 1), SimConfig(horizon=1.0, dt=0.01, scheme=IMPLICIT), 1)

    def test_strictly_positive(self):
        # admissible (4a > sigma^2) but outside the Feller regime
        params = validate_params(1, 1, 1.8, 0.5)
        path = simulate_path(params, SimConfig(horizon=50.0, dt=0.01, scheme=IMPLICIT), 2)
        self.assertTrue(np.all(path.values > 0.0))

    def test_step_solves_implicit_equation(self):
        params = validate_params(2, 1.5, 1, 1)
        dt = 0.01
        path = simulate_path(params, SimConfig(horizon=1.0, dt=dt, scheme=IMPLICIT, store_noise=True), 4)
        damping = 1.0 + 0.5 * params.b * dt
        for i in range(path.steps):
            y, y_next = math.sqrt(path.values[i]), math.sqrt(path.values[i + 1])
            residual = (
                damping * y_next ** 2
                - (y + 0.5 * params.sigma * path.noise[i]) * y_next
                - 0.5 * (params.a - 0.25 * params.sigma ** 2) * dt
            )
            self.assertAlmostEqual(residual, 0.0, places=12)

    def test_shares_noise_with_euler(self):
        params = validate_params(2, 1, 1, 1)
        euler = simulate_path(params, SimConfig(horizon=1.0, dt=0.01, store_noise=True), 9)
        implicit = simulate_path(params, SimConfig(horizon=1.0, dt=0.01, scheme=IMPLICIT, store_noise=True), 9)
        np.testing.assert_array_equal(euler.noise, implicit.noise)
        self.assertLess(np.abs(euler.values - implicit.values).max(), 0.1)


class PathTestCase(SimpleTestCase):
    def test_truncated(self):
        path = simulate_path(validate_params(1, 1, 1, 1), SimConfig(horizon=2.0, dt=0.01, store_noise=True), 1)
        head = path.truncated(100)
        self.assertEqual(head.steps, 100)
        self.assertEqual(len(head.noise), 100)
        np.testing.assert_array_equal(head.values, path.values[:101])

    def test_single_point_has_no_step(self):
        path = Path(times=np.array([0.0]), values=np.array([1.0]))
        with self.assertRaises(EmptyPath):
            path.dt
