"""
Discretized sample paths of the CIR process.

Two schemes share one noise stream: for a given seed both consume the same
Wiener increments in grid order, so their paths can be compared step by step.

    euler_full_truncation   r' = r + (a - b r+) dt + sigma sqrt(r+) dW, stored as max(r', 0)
    drift_implicit_sqrt     implicit Euler step on y = sqrt(r), strictly positive, needs 4a > sigma^2

Increments come from numpy's PCG64 generator (``standard_normal``, ziggurat),
scaled by sqrt(dt). Paths are bit-reproducible for a given numpy build; the
Gaussian law of the increments is the cross-build contract.
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from drift.core import ModelParams
from drift.exceptions import DriftError, EmptyPath, NonPositiveParameter, SchemeInadmissible

logger = logging.getLogger(__name__)

EULER = "euler_full_truncation"
IMPLICIT = "drift_implicit_sqrt"
SCHEMES = (EULER, IMPLICIT)

# Short names used on the command line and in config files.
SCHEME_ALIASES = {
    "euler": EULER,
    "implicit": IMPLICIT,
    EULER: EULER,
    IMPLICIT: IMPLICIT,
}

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def resolve_scheme(name: str) -> str:
    try:
        return SCHEME_ALIASES[str(name).strip().lower()]
    except KeyError:
        raise DriftError(f"unknown scheme {name!r}; expected one of {sorted(SCHEME_ALIASES)}")


@dataclass(frozen=True)
class SimConfig:
    horizon: float
    dt: float
    scheme: str = EULER
    store_noise: bool = False

    def __post_init__(self):
        if not self.horizon > 0:
            raise NonPositiveParameter("horizon", self.horizon)
        if not self.dt > 0:
            raise NonPositiveParameter("dt", self.dt)
        if self.dt > self.horizon:
            raise DriftError(f"dt={self.dt} exceeds the horizon {self.horizon}")
        if self.scheme not in SCHEMES:
            raise DriftError(f"unknown scheme {self.scheme!r}")

    @property
    def steps(self) -> int:
        return int(round(self.horizon / self.dt))

    def with_horizon(self, horizon: float) -> "SimConfig":
        return replace(self, horizon=horizon)


@dataclass(frozen=True, eq=False)
class Path:
    """
    Values r_0..r_n on the grid t_i = i*dt. ``noise`` holds the n increments
    dW_i that drove the path when they were kept. Paths read back from CSV
    files have no ``params_used``/``scheme_used``.
    """
    times: np.ndarray
    values: np.ndarray
    noise: Optional[np.ndarray] = None
    params_used: Optional[ModelParams] = None
    scheme_used: Optional[str] = None

    @property
    def steps(self) -> int:
        return len(self.values) - 1

    @property
    def dt(self) -> float:
        if self.steps < 1:
            raise EmptyPath("a path needs at least one step")
        return float(self.times[1] - self.times[0])

    @property
    def horizon(self) -> float:
        return float(self.times[-1])

    @property
    def has_noise(self) -> bool:
        return self.noise is not None

    def truncated(self, steps: int) -> "Path":
        """The path restricted to its first ``steps`` steps."""
        noise = None if self.noise is None else self.noise[:steps].copy()
        return Path(
            times=self.times[: steps + 1].copy(),
            values=self.values[: steps + 1].copy(),
            noise=noise,
            params_used=self.params_used,
            scheme_used=self.scheme_used,
        )


def check_admissible(params: ModelParams, scheme: str):
    if scheme == IMPLICIT and not 4.0 * params.a > params.sigma ** 2:
        raise SchemeInadmissible(
            f"{IMPLICIT} needs 4a > sigma^2, got a={params.a}, sigma={params.sigma}"
        )


def wiener_increments(seed: int, steps: int, dt: float) -> np.ndarray:
    rng = np.random.default_rng(seed & MASK64)
    return rng.standard_normal(steps) * math.sqrt(dt)


def _euler_full_truncation(params: ModelParams, dt: float, increments) -> list:
    a, b, sigma = params.a, params.b, params.sigma
    r = params.r0
    out = [r]
    for dw in increments:
        x = max(r, 0.0)
        r = r + (a - b * x) * dt + sigma * math.sqrt(x) * dw
        if r < 0.0:
            r = 0.0
        out.append(r)
    return out


def _drift_implicit_sqrt(params: ModelParams, dt: float, increments) -> list:
    # Positive root of (1 + b dt/2) y^2 - (y_i + sigma dW/2) y - (a - sigma^2/4) dt/2 = 0
    a, b, sigma = params.a, params.b, params.sigma
    damping = 1.0 + 0.5 * b * dt
    shift = (a - 0.25 * sigma * sigma) * dt / (2.0 * damping)
    y = math.sqrt(params.r0)
    out = [params.r0]
    for dw in increments:
        u = (y + 0.5 * sigma * dw) / (2.0 * damping)
        y = u + math.sqrt(u * u + shift)
        out.append(y * y)
    return out


def integrate_path(params: ModelParams, cfg: SimConfig, noise) -> Path:
    """
    Run the configured scheme over explicit Wiener increments. ``noise`` must
    hold cfg.steps increments; it is kept on the path only if cfg.store_noise.
    """
    check_admissible(params, cfg.scheme)
    steps = cfg.steps
    increments = np.asarray(noise, dtype=float)
    if increments.shape != (steps,):
        raise DriftError(f"expected {steps} increments, got shape {increments.shape}")

    if cfg.scheme == EULER:
        values = _euler_full_truncation(params, cfg.dt, increments.tolist())
    else:
        values = _drift_implicit_sqrt(params, cfg.dt, increments.tolist())

    return Path(
        times=np.arange(steps + 1) * cfg.dt,
        values=np.array(values, dtype=float),
        noise=increments.copy() if cfg.store_noise else None,
        params_used=params,
        scheme_used=cfg.scheme,
    )


def simulate_path(params: ModelParams, cfg: SimConfig, seed: int) -> Path:
    check_admissible(params, cfg.scheme)
    logger.debug("simulating %s, %d steps of %g, seed %d", cfg.scheme, cfg.steps, cfg.dt, seed)
    increments = wiener_increments(seed, cfg.steps, cfg.dt)
    return integrate_path(params, cfg, increments)


def mix64(x: int) -> int:
    """64-bit finalizer of SplitMix64."""
    x &= MASK64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & MASK64
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & MASK64
    x ^= x >> 31
    return x


def derive_replication_seed(base_seed: int, rep_index: int) -> int:
    if rep_index < 0:
        raise ValueError("rep_index must be non-negative")
    return mix64((base_seed & MASK64) ^ ((rep_index * GOLDEN_GAMMA) & MASK64))
