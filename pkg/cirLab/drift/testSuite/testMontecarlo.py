'''
Tests for drift.montecarlo.

The reproduction cases run 100 replications to T = 200 with dt = 0.01
and take a few seconds each; every class simulates once in setUpClass and the
test methods only read the shared report.
'''

from unittest.mock import patch

from django.test import SimpleTestCase

from drift.core import validate_params
from drift.estimators import ALTERNATIVE, ESTIMATORS, MLE, DriftEstimate
from drift.exceptions import AllReplicationsFailed, DegenerateDenominator, DriftError, EmptyInput, UnreliableInverse
from drift.montecarlo import ExperimentConfig, run_experiment, summarize
from drift.services import csv_text, report_frame, report_table
from drift.simulate import EULER, IMPLICIT, SimConfig

CHECKPOINTS = (10.0, 50.0, 100.0, 150.0, 200.0)


def experiment(a, b, sigma, replications=100, checkpoints=CHECKPOINTS, estimators=ESTIMATORS,
               base_seed=20240601, scheme=EULER):
    return ExperimentConfig(
        params=validate_params(a, b, sigma, 1.0),
        sim=SimConfig(horizon=max(checkpoints), dt=0.01, scheme=scheme),
        replications=replications,
        checkpoints=checkpoints,
        base_seed=base_seed,
        estimators=estimators,
    )


class SummarizeTestCase(SimpleTestCase):
    def test_population_std(self):
        mean, std = summarize([1.0, 2.0, 3.0])
        self.assertEqual(mean, 2.0)
        self.assertAlmostEqual(std, (2.0 / 3.0) ** 0.5, places=15)

    def test_single_value(self):
        self.assertEqual(summarize([0.7]), (0.7, 0.0))

    def test_empty(self):
        with self.assertRaises(EmptyInput):
            summarize([])


class ExperimentConfigTestCase(SimpleTestCase):
    def test_canonical_order(self):
        cfg = experiment(1, 1, 1, estimators=(ALTERNATIVE, MLE), checkpoints=(1, 2))
        self.assertEqual(cfg.estimators, (MLE, ALTERNATIVE))
        self.assertEqual(cfg.checkpoints, (1.0, 2.0))
        self.assertEqual(cfg.path_config.steps, 200)

    def test_invalid(self):
        with self.assertRaises(DriftError):
            experiment(1, 1, 1, replications=0)
        with self.assertRaises(DriftError):
            experiment(1, 1, 1, checkpoints=(2.0, 1.0))
        with self.assertRaises(DriftError):
            experiment(1, 1, 1, checkpoints=(0.005, 1.0))
        with self.assertRaises(DriftError):
            experiment(1, 1, 1, estimators=("ols",), checkpoints=(1.0,))

    def test_flag(self):
        self.assertFalse(experiment(1, 1, 1, checkpoints=(1.0,)).mle_flagged)
        self.assertTrue(experiment(1, 1, 2, checkpoints=(1.0,)).mle_flagged)
        self.assertFalse(experiment(1, 1, 2, checkpoints=(1.0,), estimators=(ALTERNATIVE,)).mle_flagged)


class ReportLayoutTestCase(SimpleTestCase):
    def test_cell_order_and_counts(self):
        cfg = experiment(2, 1, 1, replications=3, checkpoints=(1.0, 2.0))
        report = run_experiment(cfg)
        keys = [(c.estimator, c.param, c.checkpoint) for c in report.cells]
        self.assertEqual(keys, [
            (MLE, "a", 1.0), (MLE, "a", 2.0), (MLE, "b", 1.0), (MLE, "b", 2.0),
            (ALTERNATIVE, "a", 1.0), (ALTERNATIVE, "a", 2.0), (ALTERNATIVE, "b", 1.0), (ALTERNATIVE, "b", 2.0),
        ])
        for cell in report.cells:
            self.assertEqual(cell.n_ok + cell.n_fail, 3)

    def test_single_replication_has_zero_std(self):
        report = run_experiment(experiment(2, 1, 1, replications=1, checkpoints=(1.0, 2.0)))
        for cell in report.cells:
            if cell.n_ok:
                self.assertEqual(cell.std, 0.0)

    def test_seed_changes_results(self):
        first = run_experiment(experiment(1, 1, 1, replications=4, checkpoints=(1.0,), base_seed=1))
        second = run_experiment(experiment(1, 1, 1, replications=4, checkpoints=(1.0,), base_seed=2))
        self.assertNotEqual(first.cell(ALTERNATIVE, "a", 1.0).mean, second.cell(ALTERNATIVE, "a", 1.0).mean)

    def test_worker_count_does_not_change_report(self):
        cfg = experiment(1, 1, 1, replications=16, checkpoints=(1.0, 5.0))
        sequential = csv_text(report_frame(run_experiment(cfg, workers=1)))
        parallel = csv_text(report_frame(run_experiment(cfg, workers=8)))
        self.assertEqual(sequential, parallel)


class FailedCellTestCase(SimpleTestCase):
    @patch("drift.montecarlo.estimate")
    def test_all_failed_raises(self, mock_estimate):
        mock_estimate.side_effect = DegenerateDenominator(ALTERNATIVE, 0.0)
        with self.assertRaises(AllReplicationsFailed) as ctx:
            run_experiment(experiment(1, 1, 1, replications=2, checkpoints=(1.0,), estimators=(ALTERNATIVE,)))
        self.assertEqual(ctx.exception.failures, {"degenerate_denominator": 2})

    @patch("drift.montecarlo.estimate")
    def test_flagged_mle_cells_survive(self, mock_estimate):
        mock_estimate.side_effect = UnreliableInverse("path hit zero")
        report = run_experiment(experiment(1, 1, 2, replications=2, checkpoints=(1.0,), estimators=(MLE,)))
        for cell in report.cells:
            self.assertTrue(cell.flagged)
            self.assertEqual(cell.n_ok, 0)
            self.assertIsNone(cell.mean)
            self.assertIsNone(cell.std)
            self.assertEqual(cell.failures, {"unreliable_inverse": 2})

    @patch("drift.montecarlo.estimate")
    def test_dropped_mle_replications_are_reported(self, mock_estimate):
        mock_estimate.side_effect = [
            UnreliableInverse("path hit zero"),
            DriftEstimate(a_est=2.0, b_est=1.0, kind=MLE, denominator=1.0),
        ]
        with self.assertLogs("drift.montecarlo", "WARNING") as logs:
            report = run_experiment(experiment(2, 1, 1, replications=2, checkpoints=(1.0,), estimators=(MLE,)))
        self.assertIn("1 of 2 replications dropped", "\n".join(logs.output))

        cell = report.cell(MLE, "a", 1.0)
        self.assertFalse(cell.flagged)
        self.assertTrue(cell.incomplete)
        self.assertEqual((cell.n_ok, cell.n_fail, cell.mean), (1, 1, 2.0))
        self.assertEqual(len(report.incomplete_cells), 2)

        table = report_table(report)
        self.assertIn("2.0000+", table)
        self.assertIn("n[a_mle]", table)
        self.assertIn("1/2", table)
        self.assertIn("1 of 2 replications dropped", table)


# ============================================================
# Reproduction of the published simulation studies
# ============================================================

class MonotoneTrendMixin:
    def assert_trend(self, estimators):
        params = self.report.config.params
        for kind in estimators:
            for param in ("a", "b"):
                truth = getattr(params, param)
                early, late = self.report.cell(kind, param, 10.0), self.report.cell(kind, param, 200.0)
                self.assertLess(abs(late.mean - truth), abs(early.mean - truth), (kind, param))
                self.assertLess(late.std, early.std, (kind, param))


class ErgodicStudyTestCase(MonotoneTrendMixin, SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        # Euler paths touch zero at this volatility and would drop MLE replications
        cls.report = run_experiment(experiment(1, 1, 1, scheme=IMPLICIT))

    def test_a_at_largest_horizon(self):
        mle = self.report.cell(MLE, "a", 200.0)
        alt = self.report.cell(ALTERNATIVE, "a", 200.0)
        self.assertTrue(0.97 <= mle.mean <= 1.05, mle)
        self.assertTrue(0.04 <= mle.std <= 0.11, mle)
        self.assertTrue(0.95 <= alt.mean <= 1.10, alt)
        self.assertTrue(0.07 <= alt.std <= 0.18, alt)

    def test_b_at_largest_horizon(self):
        self.assertTrue(0.96 <= self.report.cell(MLE, "b", 200.0).mean <= 1.07)
        self.assertTrue(0.95 <= self.report.cell(ALTERNATIVE, "b", 200.0).mean <= 1.11)

    def test_nothing_flagged(self):
        self.assertEqual(self.report.flagged_cells, [])
        self.assertEqual(self.report.incomplete_cells, [])
        self.assertEqual(self.report.cell(MLE, "a", 200.0).n_ok, 100)

    def test_trend(self):
        self.assert_trend(ESTIMATORS)


class NonErgodicStudyTestCase(MonotoneTrendMixin, SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.report = run_experiment(experiment(1, 1, 2))

    def test_alternative_at_largest_horizon(self):
        self.assertTrue(0.93 <= self.report.cell(ALTERNATIVE, "a", 200.0).mean <= 1.15)
        self.assertTrue(0.90 <= self.report.cell(ALTERNATIVE, "b", 200.0).mean <= 1.25)

    def test_mle_cells_are_flagged(self):
        for cell in self.report.cells:
            self.assertEqual(cell.flagged, cell.estimator == MLE)

    def test_trend(self):
        self.assert_trend((ALTERNATIVE,))
