'''
Tests for the management commands (simulate, estimate, montecarlo, density,
ergodic), the experiment config serializer and run recording.

Commands are driven with call_command; errors surface as CommandError the way
they do when a command is called programmatically.
'''

import math
import os
import shutil
import tempfile
from io import StringIO

import numpy as np
import pandas as pd
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase, override_settings

from drift.core import StationaryLaw, stationary_density, validate_params
from drift.estimators import ALTERNATIVE, ESTIMATORS, MLE
from drift.exceptions import InvalidConfig, PathFormatError
from drift.models import ExperimentRun, RecordedCell
from drift.serializers import RunConfigSerializer
from drift.services import load_run_config, read_path_csv, write_path_csv
from drift.simulate import IMPLICIT, SimConfig, simulate_path


class TempDirMixin:
    def setUp(self):
        super().setUp()
        self.tmp = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmp, ignore_errors=True)
        super().tearDown()

    def tmp_path(self, name):
        return os.path.join(self.tmp, name)

    def write_file(self, name, text):
        path = self.tmp_path(name)
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
        return path

    def read_bytes(self, path):
        with open(path, "rb") as handle:
            return handle.read()

    def run_command(self, *args):
        out = StringIO()
        call_command(*args, stdout=out)
        return out.getvalue()


# ============================================================
# simulate
# ============================================================

class SimulateCommandTestCase(TempDirMixin, SimpleTestCase):
    ARGS = ["--a", "1", "--b", "1", "--sigma", "1", "--r0", "1", "--T", "10", "--dt", "0.01", "--seed", "7"]

    def test_row_count(self):
        out = self.tmp_path("p.csv")
        call_command("simulate", *self.ARGS, "--out", out)
        with open(out, encoding="utf-8") as handle:
            lines = handle.read().splitlines()
        self.assertEqual(lines[0], "t,r")
        self.assertEqual(len(lines), 1002)

    def test_repeat_is_byte_identical(self):
        first, second = self.tmp_path("first.csv"), self.tmp_path("second.csv")
        call_command("simulate", *self.ARGS, "--out", first)
        call_command("simulate", *self.ARGS, "--out", second)
        self.assertEqual(self.read_bytes(first), self.read_bytes(second))

    def test_file_round_trips_the_path(self):
        out = self.tmp_path("p.csv")
        call_command("simulate", *self.ARGS, "--store-noise", "--out", out)
        path = simulate_path(validate_params(1, 1, 1, 1), SimConfig(horizon=10.0, dt=0.01, store_noise=True), 7)
        loaded = read_path_csv(out)
        np.testing.assert_array_equal(loaded.values, path.values)
        np.testing.assert_array_equal(loaded.noise, path.noise)
        with open(out, encoding="utf-8") as handle:
            lines = handle.read().splitlines()
        self.assertEqual(lines[0], "t,r,dW")
        self.assertTrue(lines[-1].endswith(","))

    def test_sigma_zero(self):
        with self.assertRaisesMessage(CommandError, "sigma"):
            call_command("simulate", "--a", "1", "--b", "1", "--sigma", "0", "--r0", "1",
                         "--T", "10", "--seed", "7", "--out", self.tmp_path("p.csv"))

    def test_inadmissible_implicit(self):
        with self.assertRaises(CommandError):
            call_command("simulate", "--a", "1", "--b", "1", "--sigma", "3", "--r0", "1", "--T", "1",
                         "--seed", "7", "--scheme", "implicit", "--out", self.tmp_path("p.csv"))

    def test_missing_flag(self):
        with self.assertRaises(CommandError):
            call_command("simulate", "--a", "1", "--b", "1", "--sigma", "1", "--r0", "1", "--seed", "7",
                         "--out", self.tmp_path("p.csv"))


# ============================================================
# estimate
# ============================================================

class EstimateCommandTestCase(TempDirMixin, SimpleTestCase):
    def estimate(self, source, *extra):
        text = self.run_command("estimate", "--in", source, *extra)
        return pd.read_csv(StringIO(text), keep_default_na=False, na_values=[""]).set_index("estimator")

    def test_hand_path(self):
        source = self.write_file("hand.csv", "t,r\n0,1\n0.5,2\n1,1\n")
        rows = self.estimate(source, "--sigma", "1")
        self.assertEqual(list(rows.columns), ["a_est", "b_est", "alpha_est", "mu_est", "denominator", "warnings"])
        self.assertAlmostEqual(rows.loc["mle", "a_est"], 6.0, places=12)
        self.assertAlmostEqual(rows.loc["mle", "b_est"], 4.0, places=12)
        self.assertAlmostEqual(rows.loc["mle", "denominator"], 0.125, places=12)
        self.assertAlmostEqual(rows.loc["alt", "a_est"], 4.5, places=12)
        self.assertAlmostEqual(rows.loc["alt", "b_est"], 3.0, places=12)
        self.assertAlmostEqual(rows.loc["alt", "mu_est"], 1.5, places=12)
        self.assertTrue(pd.isna(rows.loc["alt", "warnings"]))

    def test_single_estimator(self):
        source = self.write_file("hand.csv", "t,r\n0,1\n0.5,2\n1,1\n")
        rows = self.estimate(source, "--sigma", "1", "--estimator", "alt")
        self.assertEqual(list(rows.index), ["alt"])

    def test_constant_path_warns(self):
        source = self.write_file("flat.csv", "t,r\n0,2\n0.1,2\n0.2,2\n0.3,2\n")
        rows = self.estimate(source, "--sigma", "1")
        for name in ("mle", "alt"):
            self.assertEqual(rows.loc[name, "warnings"], "degenerate_denominator")
            self.assertTrue(pd.isna(rows.loc[name, "a_est"]))

    def test_feller_warning(self):
        source = self.write_file("hand.csv", "t,r\n0,1\n0.5,2\n1,1\n")
        rows = self.estimate(source, "--sigma", "4")
        self.assertIn("feller_violation", rows.loc["mle", "warnings"])
        self.assertNotIn("feller_violation", str(rows.loc["alt", "warnings"]))

    def test_simulated_path(self):
        out = self.tmp_path("long.csv")
        call_command("simulate", "--a", "1", "--b", "1", "--sigma", "1", "--r0", "1",
                     "--T", "200", "--dt", "0.01", "--seed", "20240601", "--out", out)
        rows = self.estimate(out, "--sigma", "1", "--estimator", "alt")
        self.assertLess(abs(rows.loc["alt", "a_est"] - 1.0), 0.5)

    def test_bad_files(self):
        with self.assertRaises(CommandError):
            call_command("estimate", "--in", self.tmp_path("missing.csv"), "--sigma", "1", stdout=StringIO())
        bad = self.write_file("bad.csv", "time,value\n0,1\n1,2\n")
        with self.assertRaises(CommandError):
            call_command("estimate", "--in", bad, "--sigma", "1", stdout=StringIO())
        irregular = self.write_file("irregular.csv", "t,r\n0,1\n0.5,2\n2,1\n")
        with self.assertRaises(CommandError):
            call_command("estimate", "--in", irregular, "--sigma", "1", stdout=StringIO())


class PathFileTestCase(TempDirMixin, SimpleTestCase):
    def test_rejects_negative_values(self):
        source = self.write_file("neg.csv", "t,r\n0,1\n0.5,-2\n1,1\n")
        with self.assertRaises(PathFormatError):
            read_path_csv(source)

    def test_rejects_single_row(self):
        source = self.write_file("one.csv", "t,r\n0,1\n")
        with self.assertRaises(PathFormatError):
            read_path_csv(source)

    def test_implicit_path_round_trip(self):
        params = validate_params(2, 1, 1, 1)
        path = simulate_path(params, SimConfig(horizon=1.0, dt=0.01, scheme=IMPLICIT), 3)
        target = self.tmp_path("implicit.csv")
        write_path_csv(path, target)
        loaded = read_path_csv(target)
        np.testing.assert_array_equal(loaded.values, path.values)
        self.assertIsNone(loaded.noise)
        self.assertIsNone(loaded.params_used)


# ============================================================
# density
# ============================================================

class DensityCommandTestCase(SimpleTestCase):
    def density(self, *args):
        out = StringIO()
        call_command("density", *args, stdout=out)
        return pd.read_csv(StringIO(out.getvalue()), float_precision="round_trip")

    def test_three_points(self):
        frame = self.density("--a", "1", "--b", "1", "--sigma", "1", "--xmax", "3", "--points", "3")
        self.assertEqual(list(frame.columns), ["x", "p_inf"])
        self.assertEqual(list(frame["x"]), [1.0, 2.0, 3.0])
        law = StationaryLaw.from_params(validate_params(1, 1, 1, 1))
        for x, p in zip(frame["x"], frame["p_inf"]):
            self.assertAlmostEqual(p, stationary_density(x, law), places=15)
        self.assertAlmostEqual(frame["p_inf"][0], 4.0 * math.exp(-2.0), places=14)

    def test_normalization_on_grid(self):
        frame = self.density("--a", "1", "--b", "1", "--sigma", "1", "--xmax", "20", "--points", "2000")
        self.assertTrue((frame["p_inf"] >= 0).all())
        x = np.concatenate([[0.0], frame["x"].to_numpy()])
        p = np.concatenate([[0.0], frame["p_inf"].to_numpy()])
        self.assertAlmostEqual(np.trapezoid(p, x), 1.0, delta=1e-3)

    def test_invalid(self):
        with self.assertRaisesMessage(CommandError, "points"):
            call_command("density", "--a", "1", "--b", "1", "--sigma", "1", "--xmax", "3", "--points", "0")
        with self.assertRaisesMessage(CommandError, "xmax"):
            call_command("density", "--a", "1", "--b", "1", "--sigma", "1", "--xmax", "-1", "--points", "3")


# ============================================================
# Experiment configs and montecarlo
# ============================================================

SMALL_CONFIG = """\
# two checkpoints, one replication
a = 2
b = 1
sigma = 1
r0 = 1
dt = 0.01
replications = {replications}
checkpoints = 1, 2
base_seed = 7
"""


class RunConfigTestCase(TempDirMixin, SimpleTestCase):
    def test_defaults_from_settings(self):
        serializer = RunConfigSerializer(data={"a": "1", "b": "1", "sigma": "1", "r0": "1"})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        cfg = serializer.validated_data["experiment"]
        self.assertEqual(cfg.checkpoints, (10.0, 50.0, 100.0, 150.0, 200.0))
        self.assertEqual(cfg.replications, 100)
        self.assertEqual(cfg.sim.dt, 0.01)
        self.assertEqual(cfg.sim.horizon, 200.0)
        self.assertEqual(cfg.estimators, ESTIMATORS)

    @override_settings(DRIFT={"DT": 0.1, "INV_FLOOR": 1e-6, "CHECKPOINTS": [1.0], "REPLICATIONS": 5,
                              "BASE_SEED": 1, "WORKERS": 1, "SCHEME": "euler_full_truncation"})
    def test_overridden_settings(self):
        serializer = RunConfigSerializer(data={"a": "1", "b": "1", "sigma": "1", "r0": "1"})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        cfg = serializer.validated_data["experiment"]
        self.assertEqual((cfg.sim.dt, cfg.replications, cfg.inv_floor), (0.1, 5, 1e-6))

    def test_aliases(self):
        data = {"a": "2", "b": "1", "sigma": "1", "r0": "1", "scheme": "implicit", "estimators": "alt, mle"}
        serializer = RunConfigSerializer(data=data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        cfg = serializer.validated_data["experiment"]
        self.assertEqual(cfg.sim.scheme, IMPLICIT)
        self.assertEqual(cfg.estimators, (MLE, ALTERNATIVE))

    def test_errors_name_the_key(self):
        cases = [
            ({"sigma": "0"}, "sigma"),
            ({"bogus": "1"}, "bogus"),
            ({"checkpoints": "0.005, 1"}, "checkpoints"),
            ({"checkpoints": "ten"}, "checkpoints"),
            ({"scheme": "implicit", "sigma": "3"}, "scheme"),
            ({"replications": "0"}, "replications"),
            ({"estimators": "ols"}, "estimators"),
        ]
        for extra, key in cases:
            data = {"a": "1", "b": "1", "sigma": "1", "r0": "1"}
            data.update(extra)
            serializer = RunConfigSerializer(data=data)
            self.assertFalse(serializer.is_valid(), extra)
            self.assertIn(key, serializer.errors, extra)

    def test_load_without_section_header(self):
        source = self.write_file("run.cfg", SMALL_CONFIG.format(replications=1) + "out = report.csv\n")
        cfg, out = load_run_config(source)
        self.assertEqual(cfg.checkpoints, (1.0, 2.0))
        self.assertEqual(cfg.base_seed, 7)
        self.assertEqual(out, "report.csv")

    def test_load_with_section_header(self):
        source = self.write_file("run.cfg", "[experiment]\n" + SMALL_CONFIG.format(replications=2))
        cfg, out = load_run_config(source)
        self.assertEqual(cfg.replications, 2)
        self.assertIsNone(out)

    def test_load_reports_key(self):
        source = self.write_file("run.cfg", SMALL_CONFIG.format(replications=1) + "horizon = 1\n")
        with self.assertRaises(InvalidConfig) as ctx:
            load_run_config(source)
        self.assertEqual(ctx.exception.key, "checkpoints")


class MonteCarloCommandTestCase(TempDirMixin, SimpleTestCase):
    def test_report_and_table(self):
        source = self.write_file("run.cfg", SMALL_CONFIG.format(replications=1))
        out = self.tmp_path("report.csv")
        table = self.run_command("montecarlo", source, "--out", out)

        frame = pd.read_csv(out)
        self.assertEqual(list(frame.columns),
                         ["a", "b", "sigma", "r0", "dt", "T", "estimator", "param", "mean", "std", "n_ok", "n_fail"])
        self.assertEqual(len(frame), 8)
        self.assertTrue((frame["std"].dropna() == 0.0).all())
        self.assertIn("T=1", table)
        self.assertIn("T=2", table)
        for label in ("E[a_mle]", "sd[a_mle]", "E[a_alt]", "sd[a_alt]", "E[b_mle]", "E[b_alt]"):
            self.assertIn(label, table)

    def test_same_config_twice(self):
        source = self.write_file("run.cfg", SMALL_CONFIG.format(replications=3))
        first, second = self.tmp_path("first.csv"), self.tmp_path("second.csv")
        self.run_command("montecarlo", source, "--out", first)
        self.run_command("montecarlo", source, "--out", second, "--workers", "4")
        self.assertEqual(self.read_bytes(first), self.read_bytes(second))

    def test_csv_to_stdout_without_out(self):
        source = self.write_file("run.cfg", SMALL_CONFIG.format(replications=1))
        text = self.run_command("montecarlo", source)
        self.assertTrue(text.startswith("a,b,sigma,r0,dt,T,estimator,param,mean,std,n_ok,n_fail\n"))

    def test_benchmark_rows(self):
        config = SMALL_CONFIG.format(replications=1).replace("checkpoints = 1, 2", "checkpoints = 10")
        source = self.write_file("run.cfg", config)
        table = self.run_command("montecarlo", source, "--out", self.tmp_path("r.csv"), "--benchmark")
        self.assertIn("ref E[a_mle]", table)
        self.assertIn("2.8227", table)

    def test_config_error_names_key(self):
        source = self.write_file("run.cfg", SMALL_CONFIG.format(replications=1) + "volatility = 2\n")
        with self.assertRaisesMessage(CommandError, "volatility"):
            self.run_command("montecarlo", source)

    def test_non_feller_table_marks_mle(self):
        config = SMALL_CONFIG.format(replications=2).replace("sigma = 1", "sigma = 2")
        source = self.write_file("run.cfg", config)
        table = self.run_command("montecarlo", source, "--out", self.tmp_path("r.csv"))
        self.assertIn("2a <= sigma^2", table)
        self.assertIn("*", table)


class RecordCommandTestCase(TempDirMixin, TestCase):
    def test_record(self):
        source = self.write_file("run.cfg", SMALL_CONFIG.format(replications=2))
        self.run_command("montecarlo", source, "--out", self.tmp_path("r.csv"), "--record")
        run = ExperimentRun.objects.get()
        self.assertEqual(run.base_seed, "7")
        self.assertEqual(run.checkpoints, [1.0, 2.0])
        self.assertTrue(run.feller)
        self.assertEqual(run.cells.count(), 8)
        first = RecordedCell.objects.filter(run=run).first()
        self.assertEqual((first.estimator, first.param, first.horizon), (MLE, "a", 1.0))


# ============================================================
# ergodic
# ============================================================

class ErgodicCommandTestCase(SimpleTestCase):
    def test_gaps(self):
        out = StringIO()
        call_command("ergodic", "--a", "1", "--b", "1", "--sigma", "1", "--r0", "1",
                     "--checkpoints", "5,10", "--seed", "3", "--scheme", "implicit", stdout=out)
        frame = pd.read_csv(StringIO(out.getvalue()))
        self.assertEqual(list(frame.columns),
                         ["T", "mean_avg", "mean_gap", "second_avg", "second_gap", "inverse_avg", "inverse_gap"])
        self.assertEqual(list(frame["T"]), [5.0, 10.0])
        for _, row in frame.iterrows():
            self.assertAlmostEqual(row["mean_gap"], abs(row["mean_avg"] - 1.0), places=12)

    def test_statistics(self):
        out = StringIO()
        call_command("ergodic", "--a", "1", "--b", "1", "--sigma", "3", "--r0", "1",
                     "--checkpoints", "5", "--seed", "3", "--statistics", stdout=out)
        header = out.getvalue().splitlines()[0]
        self.assertEqual(header, "T,int_r,int_r2,int_inv_r,int_dr_over_r,r_start,r_end,min_value,inv_reliable")
