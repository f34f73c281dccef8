from django.db import models
from django.utils import timezone

"""
Relationship Summary

EXPERIMENTRUN
ExperimentRun 1 ────> * RecordedCells (RecordedCell.run FK -> ExperimentRun)

RECORDEDCELL
RecordedCell * <──── 1 ExperimentRun

Runs are only written by `manage.py montecarlo --record`; everything else in
the app works without a database.
"""

SCHEME_CHOICES = [
    ("euler_full_truncation", "Euler, full truncation"),
    ("drift_implicit_sqrt", "Drift-implicit square root"),
]

ESTIMATOR_CHOICES = [
    ("mle", "Maximum likelihood"),
    ("alternative", "Alternative (int r, int r^2)"),
]

PARAM_CHOICES = [
    ("a", "a"),
    ("b", "b"),
]


class ExperimentRun(models.Model):
    """
    One Monte Carlo experiment: the model, the grid and the seed that make it
    reproducible. base_seed is stored as text because it spans the full
    unsigned 64-bit range.
    """
    a = models.FloatField()
    b = models.FloatField()
    sigma = models.FloatField()
    r0 = models.FloatField()
    dt = models.FloatField()
    scheme = models.CharField(max_length=32, choices=SCHEME_CHOICES)
    replications = models.PositiveIntegerField()
    checkpoints = models.JSONField(default=list)
    estimators = models.JSONField(default=list)
    base_seed = models.CharField(max_length=20)
    inv_floor = models.FloatField()
    workers = models.PositiveIntegerField(default=1)
    feller = models.BooleanField()
    created = models.DateTimeField(default=timezone.now)

    class Meta:
        ordering = ["-created"]

    def __str__(self):
        return f"Run a={self.a} b={self.b} sigma={self.sigma} x{self.replications} ({self.created:%Y-%m-%d %H:%M})"


class RecordedCell(models.Model):
    run = models.ForeignKey(
        ExperimentRun,
        on_delete=models.CASCADE,
        related_name="cells",
    )
    estimator = models.CharField(max_length=16, choices=ESTIMATOR_CHOICES)
    param = models.CharField(max_length=1, choices=PARAM_CHOICES)
    horizon = models.FloatField()
    mean = models.FloatField(null=True, blank=True)
    std = models.FloatField(null=True, blank=True)
    n_ok = models.PositiveIntegerField()
    n_fail = models.PositiveIntegerField()
    failures = models.JSONField(default=dict, blank=True)
    flagged = models.BooleanField(default=False)

    class Meta:
        # insertion order is the report's row order
        ordering = ["id"]

    def __str__(self):
        return f"{self.estimator} {self.param} T={self.horizon:g}: {self.mean} ({self.std})"
