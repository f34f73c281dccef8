from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from drift.exceptions import DriftError
from drift.services import csv_text


def csv_list(value):
    """argparse type for comma-separated floats, e.g. --checkpoints 10,50,100."""
    return [float(item) for item in value.split(",") if item.strip()]


class DriftCommand(BaseCommand):
    """
    Base for the drift commands. Subclasses implement run(); any DriftError
    becomes a CommandError, so the process exits with status 1 and the
    message goes to standard error.
    """
    requires_migrations_checks = False
    requires_system_checks = []

    def drift_default(self, key):
        return settings.DRIFT[key]

    def add_model_arguments(self, parser, r0=True):
        parser.add_argument("--a", type=float, required=True, help="mean-reversion level term a > 0")
        parser.add_argument("--b", type=float, required=True, help="mean-reversion speed b > 0")
        parser.add_argument("--sigma", type=float, required=True, help="volatility sigma > 0")
        if r0:
            parser.add_argument("--r0", type=float, required=True, help="initial value r0 > 0")

    def emit_csv(self, frame):
        # the frame's text already ends in a newline
        self.stdout.write(csv_text(frame), ending="")

    def handle(self, *args, **options):
        try:
            return self.run(*args, **options)
        except DriftError as exc:
            raise CommandError(str(exc))

    def run(self, *args, **options):
        raise NotImplementedError
