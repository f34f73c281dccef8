import configparser
import logging
import re

import numpy as np
import pandas as pd
from django.db import transaction

from drift.benchmarks import benchmark_value
from drift.estimators import SHORT_NAMES
from drift.exceptions import InvalidConfig, PathFormatError
from drift.models import ExperimentRun, RecordedCell
from drift.montecarlo import PARAMETERS
from drift.serializers import RunConfigSerializer, first_error
from drift.simulate import Path

logger = logging.getLogger(__name__)

# %.17g round-trips every float64 through text.
FLOAT_FORMAT = "%.17g"

PATH_COLUMNS = ["t", "r", "dW"]
STATISTICS_COLUMNS = [
    "T", "int_r", "int_r2", "int_inv_r", "int_dr_over_r",
    "r_start", "r_end", "min_value", "inv_reliable",
]
REPORT_COLUMNS = [
    "a", "b", "sigma", "r0", "dt", "T",
    "estimator", "param", "mean", "std", "n_ok", "n_fail",
]


def write_csv(frame: pd.DataFrame, target) -> None:
    """Write a frame with the shared number format; target is a filename or a text stream."""
    frame.to_csv(target, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def csv_text(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


# Paths

def path_to_frame(path: Path) -> pd.DataFrame:
    frame = pd.DataFrame({"t": path.times, "r": path.values})
    if path.has_noise:
        # dW_i drives the step from t_i to t_{i+1}; the last grid point has none.
        frame["dW"] = np.append(path.noise, np.nan)
    return frame


def write_path_csv(path: Path, target) -> None:
    write_csv(path_to_frame(path), target)


def read_path_csv(source, rel_tolerance: float = 1e-9) -> Path:
    """
    Load a path written by `manage.py simulate` (or any file with the same
    columns). The grid must be uniform and start at t = 0; values must be
    finite and non-negative.
    """
    try:
        frame = pd.read_csv(source, float_precision="round_trip")
    except (OSError, ValueError, pd.errors.ParserError) as exc:
        raise PathFormatError(f"cannot read path file: {exc}")

    missing = [c for c in ("t", "r") if c not in frame.columns]
    if missing:
        raise PathFormatError(f"path file is missing column(s) {missing}")
    extra = [c for c in frame.columns if c not in PATH_COLUMNS]
    if extra:
        raise PathFormatError(f"unexpected column(s) {extra}")
    if len(frame) < 2:
        raise PathFormatError("a path file needs at least two grid points")

    try:
        times = frame["t"].to_numpy(dtype=float)
        values = frame["r"].to_numpy(dtype=float)
    except (TypeError, ValueError):
        raise PathFormatError("t and r must be numeric")
    if not (np.all(np.isfinite(times)) and np.all(np.isfinite(values))):
        raise PathFormatError("t and r must be finite on every row")
    if np.any(values < 0):
        raise PathFormatError("r must be non-negative")

    dt = times[1] - times[0]
    if times[0] != 0 or not dt > 0:
        raise PathFormatError("the grid must start at t = 0 and increase")
    if not np.allclose(np.diff(times), dt, rtol=rel_tolerance, atol=0.0):
        raise PathFormatError("the grid must be uniform")

    noise = None
    if "dW" in frame.columns:
        try:
            noise = frame["dW"].to_numpy(dtype=float)[:-1]
        except (TypeError, ValueError):
            raise PathFormatError("dW must be numeric")
        if not np.all(np.isfinite(noise)):
            raise PathFormatError("dW must be present on every row but the last")

    logger.debug("read path: %d steps of %g", len(values) - 1, dt)
    return Path(times=times, values=values, noise=noise)


# Statistics

def statistics_frame(stats_list) -> pd.DataFrame:
    rows = [
        {
            "T": s.horizon,
            "int_r": s.int_r,
            "int_r2": s.int_r2,
            "int_inv_r": s.int_inv_r,
            "int_dr_over_r": s.int_dr_over_r,
            "r_start": s.r_start,
            "r_end": s.r_end,
            "min_value": s.min_value,
            "inv_reliable": "true" if s.inv_reliable else "false",
        }
        for s in stats_list
    ]
    return pd.DataFrame(rows, columns=STATISTICS_COLUMNS)


# Monte Carlo reports

def report_frame(report) -> pd.DataFrame:
    cfg = report.config
    p = cfg.params
    rows = [
        {
            "a": p.a, "b": p.b, "sigma": p.sigma, "r0": p.r0, "dt": cfg.sim.dt,
            "T": cell.checkpoint,
            "estimator": cell.estimator,
            "param": cell.param,
            "mean": cell.mean,
            "std": cell.std,
            "n_ok": cell.n_ok,
            "n_fail": cell.n_fail,
        }
        for cell in report.cells
    ]
    return pd.DataFrame(rows, columns=REPORT_COLUMNS)


def _fmt(value):
    return "n/a" if value is None else f"{value:.4f}"


def report_table(report, benchmark: bool = False) -> str:
    """
    Aligned text table per parameter: E[...] and sd[...] rows for each
    estimator, one column per checkpoint. Flagged cells carry a trailing '*'
    and cells that lost replications a trailing '+', followed by an n[...] row
    of surviving counts. With benchmark=True the published values follow each
    simulated row pair.
    """
    cfg = report.config
    p = cfg.params
    columns = [f"T={c:g}" for c in cfg.checkpoints]
    regime = "2a > sigma^2" if p.feller() else "2a <= sigma^2"
    blocks = [f"a={p.a:g} b={p.b:g} sigma={p.sigma:g} r0={p.r0:g} dt={cfg.sim.dt:g} "
              f"replications={cfg.replications} ({regime})"]

    for param in PARAMETERS:
        index, data = [], []
        for kind in cfg.estimators:
            label = f"{param}_{SHORT_NAMES[kind]}"
            cells = [report.cell(kind, param, c) for c in cfg.checkpoints]
            mark = [("*" if cell.flagged else "") + ("+" if cell.incomplete else "") for cell in cells]
            index += [f"E[{label}]", f"sd[{label}]"]
            data.append([_fmt(cell.mean) + m for cell, m in zip(cells, mark)])
            data.append([_fmt(cell.std) + m for cell, m in zip(cells, mark)])
            if any(cell.incomplete for cell in cells):
                index.append(f"n[{label}]")
                data.append([f"{cell.n_ok}/{cfg.replications}" for cell in cells])

            if benchmark:
                published = [benchmark_value(p.a, p.b, p.sigma, kind, param, c) for c in cfg.checkpoints]
                if any(v is not None for v in published):
                    index += [f"ref E[{label}]", f"ref sd[{label}]"]
                    data.append([_fmt(None if v is None else v[0]) for v in published])
                    data.append([_fmt(None if v is None else v[1]) for v in published])

        frame = pd.DataFrame(data, index=index, columns=columns)
        blocks.append(frame.to_string())

    if report.flagged_cells:
        blocks.append("* maximum likelihood is not well-defined for 2a <= sigma^2")
    incomplete = report.incomplete_cells
    if incomplete:
        dropped = max(cell.n_fail for cell in incomplete)
        blocks.append(f"+ up to {dropped} of {cfg.replications} replications dropped; "
                      "statistics cover the surviving paths only")
    return "\n\n".join(blocks) + "\n"


# Config files

def load_run_config(source: str):
    """
    Parse a flat key = value experiment file and validate it. Returns
    (ExperimentConfig, out) where out is the report path or None.
    """
    try:
        with open(source, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise InvalidConfig("config", f"cannot read {source}: {exc}")

    parser = configparser.ConfigParser(interpolation=None)
    try:
        if not re.search(r"^\s*\[", text, re.MULTILINE):
            text = "[experiment]\n" + text
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise InvalidConfig("config", str(exc).splitlines()[0])

    sections = parser.sections()
    if len(sections) != 1:
        raise InvalidConfig("config", f"expected a single section, found {sections}")

    serializer = RunConfigSerializer(data=dict(parser.items(sections[0])))
    if not serializer.is_valid():
        raise first_error(serializer.errors)
    data = serializer.validated_data
    return data["experiment"], data.get("out")


# Provenance

@transaction.atomic
def record_report(report, workers: int = 1) -> ExperimentRun:
    cfg = report.config
    p = cfg.params
    run = ExperimentRun.objects.create(
        a=p.a, b=p.b, sigma=p.sigma, r0=p.r0,
        dt=cfg.sim.dt,
        scheme=cfg.sim.scheme,
        replications=cfg.replications,
        checkpoints=list(cfg.checkpoints),
        estimators=list(cfg.estimators),
        base_seed=str(cfg.base_seed),
        inv_floor=cfg.inv_floor,
        workers=workers,
        feller=p.feller(),
    )
    RecordedCell.objects.bulk_create([
        RecordedCell(
            run=run,
            estimator=cell.estimator,
            param=cell.param,
            horizon=cell.checkpoint,
            mean=cell.mean,
            std=cell.std,
            n_ok=cell.n_ok,
            n_fail=cell.n_fail,
            failures=cell.failures,
            flagged=cell.flagged,
        )
        for cell in report.cells
    ])
    logger.info("recorded experiment run %s with %d cells", run.pk, len(report.cells))
    return run
