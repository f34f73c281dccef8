import logging

import pandas as pd

from drift.estimators import ALTERNATIVE, ESTIMATORS, MLE, SHORT_NAMES, estimate, to_alpha_mu
from drift.exceptions import DegenerateDenominator, NonPositiveParameter, UnreliableInverse, ZeroMeanReversion
from drift.management.base import DriftCommand
from drift.pathstats import path_statistics
from drift.services import read_path_csv

logger = logging.getLogger(__name__)

ESTIMATE_COLUMNS = ["estimator", "a_est", "b_est", "alpha_est", "mu_est", "denominator", "warnings"]
SELECTIONS = {"mle": (MLE,), "alt": (ALTERNATIVE,), "both": ESTIMATORS}


class Command(DriftCommand):
    help = "Estimate (a, b) from a path CSV file with sigma known."

    def add_arguments(self, parser):
        parser.add_argument("--in", dest="in_path", required=True, help="path CSV file")
        parser.add_argument("--sigma", type=float, required=True)
        parser.add_argument("--inv-floor", type=float, default=None)
        parser.add_argument("--estimator", choices=sorted(SELECTIONS), default="both")

    def run(self, *args, **options):
        sigma = options["sigma"]
        if not sigma > 0:
            raise NonPositiveParameter("sigma", sigma)
        inv_floor = options["inv_floor"]
        if inv_floor is None:
            inv_floor = self.drift_default("INV_FLOOR")

        path = read_path_csv(options["in_path"])
        stats = path_statistics(path, inv_floor)
        rows = [self.estimate_row(kind, stats, sigma) for kind in SELECTIONS[options["estimator"]]]
        self.emit_csv(pd.DataFrame(rows, columns=ESTIMATE_COLUMNS))

    def estimate_row(self, kind, stats, sigma):
        row = {"estimator": SHORT_NAMES[kind]}
        warnings = []
        try:
            est = estimate(kind, stats, sigma)
        except (DegenerateDenominator, UnreliableInverse) as exc:
            logger.warning("%s: %s", kind, exc)
            row["warnings"] = exc.kind
            return row

        row.update(a_est=est.a_est, b_est=est.b_est, denominator=est.denominator)
        try:
            alpha_mu = to_alpha_mu(est)
            row.update(alpha_est=alpha_mu.alpha_est, mu_est=alpha_mu.mu_est)
        except ZeroMeanReversion as exc:
            warnings.append(exc.kind)

        if kind == MLE and 2.0 * est.a_est <= sigma * sigma:
            logger.warning("estimated 2a = %g <= sigma^2 = %g: the likelihood estimator is not well-defined here",
                           2.0 * est.a_est, sigma * sigma)
            warnings.append("feller_violation")
        row["warnings"] = ";".join(warnings)
        return row
