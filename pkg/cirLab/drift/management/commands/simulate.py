from drift.core import validate_params
from drift.management.base import DriftCommand
from drift.services import write_path_csv
from drift.simulate import SimConfig, resolve_scheme, simulate_path


class Command(DriftCommand):
    help = "Simulate one CIR path and write it as a t,r[,dW] CSV file."

    def add_arguments(self, parser):
        self.add_model_arguments(parser)
        parser.add_argument("--T", dest="horizon", type=float, required=True, help="time horizon")
        parser.add_argument("--dt", type=float, default=None, help="grid step (default settings.DRIFT['DT'])")
        parser.add_argument("--seed", type=int, required=True)
        parser.add_argument("--scheme", choices=["euler", "implicit"], default="euler")
        parser.add_argument("--store-noise", action="store_true", help="add the dW column")
        parser.add_argument("--out", required=True, help="output CSV file")

    def run(self, *args, **options):
        params = validate_params(options["a"], options["b"], options["sigma"], options["r0"])
        dt = options["dt"] if options["dt"] is not None else self.drift_default("DT")
        cfg = SimConfig(
            horizon=options["horizon"],
            dt=dt,
            scheme=resolve_scheme(options["scheme"]),
            store_noise=options["store_noise"],
        )
        path = simulate_path(params, cfg, options["seed"])
        write_path_csv(path, options["out"])
        if options["verbosity"] > 1:
            self.stdout.write(self.style.SUCCESS(f"wrote {path.steps + 1} points to {options['out']}"))
