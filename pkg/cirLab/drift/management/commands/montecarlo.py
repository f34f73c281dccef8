from drift.management.base import DriftCommand
from drift.montecarlo import run_experiment
from drift.services import load_run_config, record_report, report_frame, report_table, write_csv


class Command(DriftCommand):
    help = (
        "Run a Monte Carlo experiment from a key = value config file, write the "
        "long-format report CSV and print the means/standard deviations table."
    )

    def add_arguments(self, parser):
        parser.add_argument("config", help="experiment config file")
        parser.add_argument("--out", default=None, help="report CSV file (overrides the config's out key)")
        parser.add_argument("--workers", type=int, default=None,
                            help="worker processes (default settings.DRIFT['WORKERS'])")
        parser.add_argument("--record", action="store_true", help="store the run in the database")
        parser.add_argument("--benchmark", action="store_true",
                            help="print the published reference values under the simulated rows")

    def run(self, *args, **options):
        cfg, out = load_run_config(options["config"])
        out = options["out"] or out
        workers = options["workers"]
        if workers is None:
            workers = self.drift_default("WORKERS")

        workers = max(1, workers)
        report = run_experiment(cfg, workers=workers)
        frame = report_frame(report)
        if out:
            write_csv(frame, out)
        else:
            self.emit_csv(frame)
            self.stdout.write("")

        self.stdout.write(report_table(report, benchmark=options["benchmark"]), ending="")
        if options["record"]:
            run = record_report(report, workers=workers)
            self.stdout.write(self.style.SUCCESS(f"recorded as experiment run {run.pk}"))
