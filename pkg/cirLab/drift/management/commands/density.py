import numpy as np
import pandas as pd

from drift.core import StationaryLaw, stationary_density, validate_params
from drift.exceptions import InvalidConfig
from drift.management.base import DriftCommand


class Command(DriftCommand):
    help = "Emit the stationary density as x,p_inf on N equally spaced points in (0, xmax]."

    def add_arguments(self, parser):
        self.add_model_arguments(parser, r0=False)
        parser.add_argument("--xmax", type=float, required=True)
        parser.add_argument("--points", type=int, required=True)

    def run(self, *args, **options):
        # r0 does not enter the stationary law
        params = validate_params(options["a"], options["b"], options["sigma"], 1.0)
        xmax, points = options["xmax"], options["points"]
        if not xmax > 0:
            raise InvalidConfig("xmax", f"must be positive, got {xmax}")
        if points < 1:
            raise InvalidConfig("points", f"must be at least 1, got {points}")

        x = np.arange(1, points + 1) * xmax / points
        law = StationaryLaw.from_params(params)
        self.emit_csv(pd.DataFrame({"x": x, "p_inf": stationary_density(x, law)}))
