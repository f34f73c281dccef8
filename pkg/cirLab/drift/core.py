"""
Model parameters of dr = (a - b r) dt + sigma sqrt(r) dW and the moment theory
used as the reference for every estimator and diagnostic.

    stationary law    Gamma(shape = 2a/sigma^2, rate = 2b/sigma^2)
    E r_inf           a/b
    E r_inf^2         a^2/b^2 + a sigma^2/(2 b^2)
    E 1/r_inf         b/(a - sigma^2/2)      (needs 2a > sigma^2)
    E r_t             (r0 - a/b) e^{-bt} + a/b
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.special import gammaln

from drift.exceptions import FellerViolation, NegativeTime, NonPositiveParameter

logger = logging.getLogger(__name__)

MEAN = "mean"
SECOND = "second"
INVERSE_MEAN = "inverse_mean"
MOMENT_KINDS = (MEAN, SECOND, INVERSE_MEAN)

# The gamma tail beyond the truncation point carries less than 1e-12 mass.
TAIL_SPREAD = 40.0


@dataclass(frozen=True)
class ModelParams:
    a: float
    b: float
    sigma: float
    r0: float

    def feller(self) -> bool:
        """True when 2a > sigma^2: the process never reaches zero."""
        return 2.0 * self.a > self.sigma * self.sigma

    def mle_defined(self) -> bool:
        return self.feller()

    @property
    def long_run_mean(self) -> float:
        return self.a / self.b


def validate_params(a, b, sigma, r0) -> ModelParams:
    """
    Build ModelParams from four raw numbers, rejecting anything that is not a
    finite positive real. The error names the first offending parameter.
    """
    values = {"a": a, "b": b, "sigma": sigma, "r0": r0}
    checked = {}
    for name, raw in values.items():
        try:
            value = float(raw)
        except (TypeError, ValueError):
            raise NonPositiveParameter(name, raw)
        if not math.isfinite(value) or value <= 0.0:
            raise NonPositiveParameter(name, raw)
        checked[name] = value

    params = ModelParams(**checked)
    if not params.feller():
        logger.debug("parameters %s violate the Feller condition 2a > sigma^2", params)
    return params


@dataclass(frozen=True)
class StationaryLaw:
    alpha: float
    beta: float

    def __post_init__(self):
        if not self.alpha > 0.0:
            raise NonPositiveParameter("alpha", self.alpha)
        if not self.beta > 0.0:
            raise NonPositiveParameter("beta", self.beta)

    @classmethod
    def from_params(cls, params: ModelParams) -> "StationaryLaw":
        s2 = params.sigma * params.sigma
        return cls(alpha=2.0 * params.a / s2, beta=2.0 * params.b / s2)

    @property
    def support_end(self) -> float:
        """Right end of the truncated support used for quadrature."""
        root = math.sqrt(self.alpha)
        return (self.alpha + TAIL_SPREAD * root + TAIL_SPREAD) / self.beta

    @property
    def mode(self) -> float:
        return max(self.alpha - 1.0, 0.0) / self.beta


def stationary_density(x, law: StationaryLaw):
    """
    Gamma density beta^alpha x^(alpha-1) e^(-beta x) / Gamma(alpha), and 0 for
    x <= 0. Evaluated in log space so large shapes do not overflow. Accepts a
    scalar or an array.
    """
    arr = np.asarray(x, dtype=float)
    out = np.zeros_like(arr)
    pos = arr > 0.0
    if np.any(pos):
        xp = arr[pos]
        log_p = (
            law.alpha * math.log(law.beta)
            + (law.alpha - 1.0) * np.log(xp)
            - law.beta * xp
            - gammaln(law.alpha)
        )
        out[pos] = np.exp(log_p)
    if out.ndim == 0:
        return float(out)
    return out


def stationary_moment(kind: str, params: ModelParams) -> float:
    a, b, s2 = params.a, params.b, params.sigma * params.sigma
    if kind == MEAN:
        return a / b
    if kind == SECOND:
        return a * a / (b * b) + a * s2 / (2.0 * b * b)
    if kind == INVERSE_MEAN:
        # The boundary 2a = sigma^2 is rejected along with the non-Feller regime.
        if not params.feller():
            raise FellerViolation(
                f"inverse moment needs 2a > sigma^2, got a={a}, sigma={params.sigma}"
            )
        return b / (a - s2 / 2.0)
    raise ValueError(f"unknown moment kind {kind!r}; expected one of {MOMENT_KINDS}")


def stationary_variance(params: ModelParams) -> float:
    return params.a * params.sigma ** 2 / (2.0 * params.b ** 2)


def transient_mean(t: float, params: ModelParams) -> float:
    if t < 0:
        raise NegativeTime(f"time must be non-negative, got {t}")
    level = params.a / params.b
    return (params.r0 - level) * math.exp(-params.b * t) + level


def transient_variance(t: float, params: ModelParams) -> float:
    """Var r_t for the process started at r0."""
    if t < 0:
        raise NegativeTime(f"time must be non-negative, got {t}")
    a, b, s2 = params.a, params.b, params.sigma ** 2
    decay = math.exp(-b * t)
    return (
        s2 * (params.r0 - a / b) * (decay - decay * decay) / b
        + a * s2 * (1.0 - decay * decay) / (2.0 * b * b)
    )


def stationary_expectation(f, law: StationaryLaw, epsabs=1e-13, epsrel=1e-12) -> float:
    """Integral of f(x) p_inf(x) over the truncated support (0, support_end)."""
    upper = law.support_end
    points = [law.mode] if 0.0 < law.mode < upper else None
    value, abserr = integrate.quad(
        lambda x: f(x) * stationary_density(x, law),
        0.0,
        upper,
        points=points,
        epsabs=epsabs,
        epsrel=epsrel,
        limit=400,
    )
    logger.debug("stationary quadrature on (0, %.6g): %.16g +- %.2g", upper, value, abserr)
    return value


def stationary_mass(law: StationaryLaw) -> float:
    return stationary_expectation(lambda x: 1.0, law)
