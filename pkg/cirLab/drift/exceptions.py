"""
Errors raised by the drift app.

Every error carries a stable ``kind`` string. Monte Carlo failure counts and
CLI warnings are keyed by it, so renaming a kind changes report output.
"""


class DriftError(ValueError):
    kind = "drift_error"


class NonPositiveParameter(DriftError):
    kind = "non_positive_parameter"

    def __init__(self, name, value=None):
        self.name = name
        self.value = value
        super().__init__(f"parameter '{name}' must be positive, got {value!r}")


class FellerViolation(DriftError):
    kind = "feller_violation"


class NegativeTime(DriftError):
    kind = "negative_time"


class SchemeInadmissible(DriftError):
    kind = "scheme_inadmissible"


class EmptyPath(DriftError):
    kind = "empty_path"


class OffGridCheckpoint(DriftError):
    kind = "off_grid_checkpoint"

    def __init__(self, checkpoint, dt):
        self.checkpoint = checkpoint
        self.dt = dt
        super().__init__(f"checkpoint {checkpoint!r} is not on the grid with step {dt!r}")


class DegenerateDenominator(DriftError):
    kind = "degenerate_denominator"

    def __init__(self, estimator, denominator):
        self.estimator = estimator
        self.denominator = denominator
        super().__init__(f"{estimator} denominator {denominator!r} is degenerate (constant path?)")


class UnreliableInverse(DriftError):
    kind = "unreliable_inverse"


class ZeroMeanReversion(DriftError):
    kind = "zero_mean_reversion"


class MissingNoise(DriftError):
    kind = "missing_noise"


class EmptyInput(DriftError):
    kind = "empty_input"


class AllReplicationsFailed(DriftError):
    kind = "all_replications_failed"

    def __init__(self, cell, failures=None):
        self.cell = cell
        self.failures = dict(failures or {})
        super().__init__(f"every replication failed for cell {cell}: {self.failures}")


class PathFormatError(DriftError):
    kind = "path_format"


class InvalidConfig(DriftError):
    kind = "invalid_config"

    def __init__(self, key, message):
        self.key = key
        super().__init__(f"{key}: {message}")
