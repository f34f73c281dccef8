"""
Replicated simulation of both estimators at nested horizons.

Replication i simulates one path with seed derive_replication_seed(base_seed, i)
up to the last checkpoint and evaluates every estimator on the prefix
statistics at each checkpoint. Replications run in any order on any number of
worker processes; results are collected in replication order before
aggregation, so reports do not depend on the worker count.
"""

import logging
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from drift.core import ModelParams
from drift.estimators import ESTIMATORS, MLE, estimate
from drift.exceptions import (
    AllReplicationsFailed,
    DegenerateDenominator,
    DriftError,
    EmptyInput,
    UnreliableInverse,
)
from drift.pathstats import DEFAULT_INV_FLOOR, GRID_TOLERANCE, checkpoint_statistics
from drift.simulate import SimConfig, derive_replication_seed, simulate_path

logger = logging.getLogger(__name__)

PARAMETERS = ("a", "b")


@dataclass(frozen=True)
class ExperimentConfig:
    params: ModelParams
    sim: SimConfig
    replications: int
    checkpoints: tuple
    base_seed: int
    estimators: tuple = ESTIMATORS
    inv_floor: float = DEFAULT_INV_FLOOR

    def __post_init__(self):
        if self.replications < 1:
            raise DriftError(f"replications must be at least 1, got {self.replications}")
        if not self.checkpoints:
            raise DriftError("at least one checkpoint is required")
        if self.inv_floor < 0:
            raise DriftError(f"inv_floor must be non-negative, got {self.inv_floor}")

        checkpoints = tuple(float(c) for c in self.checkpoints)
        if list(checkpoints) != sorted(checkpoints):
            raise DriftError(f"checkpoints must be ascending, got {list(checkpoints)}")
        for checkpoint in checkpoints:
            m = round(checkpoint / self.sim.dt)
            if m < 1 or abs(m * self.sim.dt - checkpoint) > GRID_TOLERANCE:
                raise DriftError(f"checkpoint {checkpoint} is not on the grid with step {self.sim.dt}")
        if checkpoints[-1] > self.sim.horizon + GRID_TOLERANCE:
            raise DriftError(f"checkpoint {checkpoints[-1]} is beyond the horizon {self.sim.horizon}")

        unknown = [e for e in self.estimators if e not in ESTIMATORS]
        if unknown or not self.estimators:
            raise DriftError(f"estimators must be a non-empty subset of {ESTIMATORS}, got {self.estimators}")
        # Canonical order keeps report rows stable whatever order the caller used.
        estimators = tuple(e for e in ESTIMATORS if e in self.estimators)

        object.__setattr__(self, "checkpoints", checkpoints)
        object.__setattr__(self, "estimators", estimators)

    @property
    def mle_flagged(self) -> bool:
        """MLE requested outside the Feller regime: its cells carry a warning."""
        return MLE in self.estimators and not self.params.feller()

    @property
    def path_config(self) -> SimConfig:
        return self.sim.with_horizon(self.checkpoints[-1])


@dataclass
class ReportCell:
    estimator: str
    param: str
    checkpoint: float
    mean: Optional[float]
    std: Optional[float]
    n_ok: int
    n_fail: int
    failures: dict = field(default_factory=dict)
    flagged: bool = False

    @property
    def incomplete(self) -> bool:
        return self.n_fail > 0


@dataclass
class MonteCarloReport:
    config: ExperimentConfig
    cells: list

    def cell(self, estimator: str, param: str, checkpoint: float) -> ReportCell:
        for cell in self.cells:
            if cell.estimator == estimator and cell.param == param and cell.checkpoint == float(checkpoint):
                return cell
        raise KeyError((estimator, param, checkpoint))

    @property
    def flagged_cells(self) -> list:
        return [cell for cell in self.cells if cell.flagged]

    @property
    def incomplete_cells(self) -> list:
        return [cell for cell in self.cells if cell.incomplete]


class _Replication(NamedTuple):
    index: int
    seed: int
    params: ModelParams
    sim: SimConfig
    checkpoints: tuple
    estimators: tuple
    inv_floor: float


def summarize(values):
    """Mean and population standard deviation (divisor n)."""
    arr = np.asarray(list(values), dtype=float)
    if arr.size == 0:
        raise EmptyInput("cannot summarize an empty list")
    mean = float(arr.mean())
    std = float(np.sqrt(np.mean((arr - mean) ** 2)))
    return mean, std


def run_replication(task: _Replication) -> list:
    """
    One path, every checkpoint. Each checkpoint yields a dict mapping the
    estimator to a DriftEstimate, or to the error kind when it failed.
    """
    path = simulate_path(task.params, task.sim, task.seed)
    outcomes = []
    for stats in checkpoint_statistics(path, task.checkpoints, task.inv_floor):
        row = {}
        for kind in task.estimators:
            try:
                row[kind] = estimate(kind, stats, task.params.sigma)
            except (DegenerateDenominator, UnreliableInverse) as exc:
                row[kind] = exc.kind
        outcomes.append(row)
    return outcomes


def _tasks(cfg: ExperimentConfig) -> list:
    sim = cfg.path_config
    return [
        _Replication(
            index=i,
            seed=derive_replication_seed(cfg.base_seed, i),
            params=cfg.params,
            sim=sim,
            checkpoints=cfg.checkpoints,
            estimators=cfg.estimators,
            inv_floor=cfg.inv_floor,
        )
        for i in range(cfg.replications)
    ]


def _aggregate(cfg: ExperimentConfig, results: list) -> MonteCarloReport:
    cells = []
    for kind in cfg.estimators:
        flagged = kind == MLE and cfg.mle_flagged
        for param in PARAMETERS:
            for k, checkpoint in enumerate(cfg.checkpoints):
                values = []
                failures = Counter()
                for outcomes in results:
                    outcome = outcomes[k][kind]
                    if isinstance(outcome, str):
                        failures[outcome] += 1
                    else:
                        values.append(outcome.a_est if param == "a" else outcome.b_est)

                key = (kind, param, checkpoint)
                if values:
                    mean, std = summarize(values)
                elif flagged:
                    mean, std = None, None
                else:
                    raise AllReplicationsFailed(key, failures)

                if failures and kind == MLE and not flagged:
                    # the surviving paths never came near zero, so the mean is biased
                    logger.warning("cell %s: %d of %d replications dropped %s; "
                                   "the drift-implicit scheme keeps paths away from zero",
                                   key, sum(failures.values()), cfg.replications, dict(failures))
                elif failures:
                    logger.info("cell %s: %d of %d replications dropped %s",
                                key, sum(failures.values()), cfg.replications, dict(failures))
                cells.append(ReportCell(
                    estimator=kind,
                    param=param,
                    checkpoint=checkpoint,
                    mean=mean,
                    std=std,
                    n_ok=len(values),
                    n_fail=sum(failures.values()),
                    failures=dict(sorted(failures.items())),
                    flagged=flagged,
                ))
    return MonteCarloReport(config=cfg, cells=cells)


def run_experiment(cfg: ExperimentConfig, workers: int = 1) -> MonteCarloReport:
    started = time.perf_counter()
    logger.info("experiment %s: %d replications, checkpoints %s, %d worker(s)",
                cfg.params, cfg.replications, list(cfg.checkpoints), workers)
    if cfg.mle_flagged:
        logger.warning("2a <= sigma^2 for %s: maximum likelihood cells are not well-defined", cfg.params)

    tasks = _tasks(cfg)
    if workers <= 1:
        results = [run_replication(task) for task in tasks]
    else:
        chunksize = max(1, len(tasks) // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            # map() yields in submission order, whatever order workers finish in.
            results = list(pool.map(run_replication, tasks, chunksize=chunksize))

    report = _aggregate(cfg, results)
    logger.info("experiment finished in %.2fs", time.perf_counter() - started)
    return report
