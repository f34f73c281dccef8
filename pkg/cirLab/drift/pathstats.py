"""
Pathwise functionals consumed by the estimators and the ergodic diagnostics.

Every integral is a left-endpoint sum over i = 0..n-1:

    int_r          sum r_i dt
    int_r2         sum r_i^2 dt
    int_inv_r      sum (1/r_i) dt
    int_dr_over_r  sum (r_{i+1} - r_i) / r_i      (non-anticipating Ito sum)

Each checkpoint segment is summed once with math.fsum and the prefix totals
combine the segment sums, so a checkpoint agrees with the path truncated there
to within a few ulps (exactly for the first checkpoint).
"""

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from drift.core import INVERSE_MEAN, MEAN, SECOND, ModelParams, stationary_moment
from drift.exceptions import DriftError, EmptyPath, MissingNoise, OffGridCheckpoint

logger = logging.getLogger(__name__)

DEFAULT_INV_FLOOR = 1e-8
GRID_TOLERANCE = 1e-9


@dataclass(frozen=True)
class PathStatistics:
    horizon: float
    int_r: float
    int_r2: float
    int_inv_r: Optional[float]
    int_dr_over_r: Optional[float]
    r_start: float
    r_end: float
    min_value: float
    inv_reliable: bool

    @property
    def variance_gap(self) -> float:
        """T * int_r2 - int_r^2, non-negative by Cauchy-Schwarz."""
        return self.horizon * self.int_r2 - self.int_r * self.int_r

    @property
    def inverse_gap(self) -> Optional[float]:
        """int_r * int_inv_r - T^2, non-negative by Cauchy-Schwarz."""
        if self.int_inv_r is None:
            return None
        return self.int_r * self.int_inv_r - self.horizon * self.horizon


class ErgodicGaps(NamedTuple):
    mean: float
    second: float
    inverse: Optional[float]


class _Integrands:
    """
    Per-step integrand terms of one path. ``prefixes`` walks the grid once,
    summing each segment between consecutive checkpoints with math.fsum and
    carrying the running totals as lists of segment sums.
    """

    def __init__(self, path):
        if path.steps < 1:
            raise EmptyPath("a path needs at least one step")
        dt = path.dt
        values = np.asarray(path.values, dtype=float)
        left = values[:-1]
        self.values = values
        self.times = np.asarray(path.times, dtype=float)
        self.r = (left * dt).tolist()
        self.r2 = (left * left * dt).tolist()
        with np.errstate(divide="ignore", invalid="ignore"):
            self.inv_r = ((1.0 / left) * dt).tolist()
            self.dr_over_r = (np.diff(values) / left).tolist()
        self.running_min = np.minimum.accumulate(values)

    def prefixes(self, steps: list, inv_floor: float) -> list:
        totals = {"r": [], "r2": [], "inv_r": [], "dr_over_r": []}
        out = []
        previous = 0
        for m in steps:
            min_value = float(self.running_min[m])
            reliable = min_value > inv_floor
            # the running minimum never recovers, so inverse sums stop at the first unreliable prefix
            names = ("r", "r2", "inv_r", "dr_over_r") if reliable else ("r", "r2")
            for name in names:
                totals[name].append(math.fsum(getattr(self, name)[previous:m]))
            previous = m
            out.append(PathStatistics(
                horizon=float(self.times[m]),
                int_r=math.fsum(totals["r"]),
                int_r2=math.fsum(totals["r2"]),
                int_inv_r=math.fsum(totals["inv_r"]) if reliable else None,
                int_dr_over_r=math.fsum(totals["dr_over_r"]) if reliable else None,
                r_start=float(self.values[0]),
                r_end=float(self.values[m]),
                min_value=min_value,
                inv_reliable=reliable,
            ))
        return out


def _check_floor(inv_floor):
    if inv_floor < 0:
        raise DriftError(f"inv_floor must be non-negative, got {inv_floor}")


def path_statistics(path, inv_floor: float = DEFAULT_INV_FLOOR) -> PathStatistics:
    _check_floor(inv_floor)
    integrands = _Integrands(path)
    return integrands.prefixes([path.steps], inv_floor)[0]


def checkpoint_steps(path, checkpoints) -> list:
    """Grid indices of the checkpoints; each must be a positive multiple of dt within the path."""
    dt = path.dt
    steps = []
    previous = 0
    for checkpoint in checkpoints:
        m = int(round(checkpoint / dt))
        if abs(m * dt - checkpoint) > GRID_TOLERANCE or m < 1 or m > path.steps:
            raise OffGridCheckpoint(checkpoint, dt)
        if m < previous:
            raise DriftError(f"checkpoints must be ascending, got {list(checkpoints)}")
        steps.append(m)
        previous = m
    return steps


def checkpoint_statistics(path, checkpoints, inv_floor: float = DEFAULT_INV_FLOOR) -> list:
    _check_floor(inv_floor)
    integrands = _Integrands(path)
    return integrands.prefixes(checkpoint_steps(path, checkpoints), inv_floor)


def stochastic_sums(path, steps: Optional[int] = None):
    """
    (sum dW_i / sqrt(r_i), sum sqrt(r_i) dW_i) over the first ``steps`` steps,
    the discrete stochastic integrals against the stored Wiener increments.
    """
    if path.noise is None:
        raise MissingNoise("path was simulated without store_noise")
    steps = path.steps if steps is None else steps
    left = np.asarray(path.values[:steps], dtype=float)
    dw = np.asarray(path.noise[:steps], dtype=float)
    root = np.sqrt(left)
    with np.errstate(divide="ignore", invalid="ignore"):
        s_inv = math.fsum((dw / root).tolist())
    s_sqrt = math.fsum((root * dw).tolist())
    return s_inv, s_sqrt


def ergodic_gaps(stats: PathStatistics, params: ModelParams) -> ErgodicGaps:
    """
    Distance of the three time averages from their stationary limits. The
    inverse gap is None outside the Feller regime or when the path came too
    close to zero.
    """
    T = stats.horizon
    mean_gap = abs(stats.int_r / T - stationary_moment(MEAN, params))
    second_gap = abs(stats.int_r2 / T - stationary_moment(SECOND, params))
    inverse_gap = None
    if stats.inv_reliable and params.feller():
        inverse_gap = abs(stats.int_inv_r / T - stationary_moment(INVERSE_MEAN, params))
    return ErgodicGaps(mean_gap, second_gap, inverse_gap)
