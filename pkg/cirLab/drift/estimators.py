"""
Drift estimators for (a, b) with sigma known.

mle          closed-form likelihood maximizer; needs int dt/r and int dr/r, so
             only meaningful when 2a > sigma^2
alternative  built from int r dt and int r^2 dt only; defined for every
             positive (a, b, sigma)

Both divide by a Cauchy-Schwarz gap that vanishes only on constant paths.
"""

from dataclasses import dataclass
from typing import NamedTuple

from drift.exceptions import (
    DegenerateDenominator,
    DriftError,
    MissingNoise,
    NonPositiveParameter,
    UnreliableInverse,
    ZeroMeanReversion,
)
from drift.pathstats import DEFAULT_INV_FLOOR, PathStatistics, path_statistics, stochastic_sums

MLE = "mle"
ALTERNATIVE = "alternative"
ESTIMATORS = (MLE, ALTERNATIVE)

ESTIMATOR_ALIASES = {
    "mle": MLE,
    "alt": ALTERNATIVE,
    "alternative": ALTERNATIVE,
}

# Labels in command output and report tables.
SHORT_NAMES = {MLE: "mle", ALTERNATIVE: "alt"}

ZERO_TOLERANCE = 1e-12


def resolve_estimator(name: str) -> str:
    try:
        return ESTIMATOR_ALIASES[str(name).strip().lower()]
    except KeyError:
        raise DriftError(f"unknown estimator {name!r}; expected one of {sorted(ESTIMATOR_ALIASES)}")


@dataclass(frozen=True)
class DriftEstimate:
    a_est: float
    b_est: float
    kind: str
    denominator: float


@dataclass(frozen=True)
class AlphaMuEstimate:
    alpha_est: float
    mu_est: float


class ResidualTerms(NamedTuple):
    r_a: float
    r_b: float


def degenerate_tolerance(horizon: float) -> float:
    return 1e-12 * max(1.0, horizon * horizon)


def _mle_denominator(stats: PathStatistics) -> float:
    if not stats.inv_reliable or stats.int_inv_r is None or stats.int_dr_over_r is None:
        raise UnreliableInverse(
            f"path minimum {stats.min_value!r} is at or below the inverse floor"
        )
    denominator = stats.inverse_gap
    if denominator <= degenerate_tolerance(stats.horizon):
        raise DegenerateDenominator(MLE, denominator)
    return denominator


def mle_estimate(stats: PathStatistics) -> DriftEstimate:
    D = _mle_denominator(stats)
    T = stats.horizon
    rise = stats.r_end - stats.r_start
    a_est = (stats.int_r * stats.int_dr_over_r - T * rise) / D
    b_est = (-rise * stats.int_inv_r + T * stats.int_dr_over_r) / D
    return DriftEstimate(a_est=a_est, b_est=b_est, kind=MLE, denominator=D)


def alt_estimate(stats: PathStatistics, sigma: float) -> DriftEstimate:
    if not sigma > 0:
        raise NonPositiveParameter("sigma", sigma)
    D = stats.variance_gap
    if D <= degenerate_tolerance(stats.horizon):
        raise DegenerateDenominator(ALTERNATIVE, D)
    half_var = 0.5 * sigma * sigma
    a_est = half_var * stats.int_r * stats.int_r / D
    b_est = half_var * stats.horizon * stats.int_r / D
    return DriftEstimate(a_est=a_est, b_est=b_est, kind=ALTERNATIVE, denominator=D)


def estimate(kind: str, stats: PathStatistics, sigma: float) -> DriftEstimate:
    if kind == MLE:
        return mle_estimate(stats)
    if kind == ALTERNATIVE:
        return alt_estimate(stats, sigma)
    raise DriftError(f"unknown estimator {kind!r}")


def to_alpha_mu(est: DriftEstimate) -> AlphaMuEstimate:
    """Map (a, b) to the (alpha, mu) parametrization dr = alpha (mu - r) dt + ..."""
    if abs(est.b_est) <= ZERO_TOLERANCE:
        raise ZeroMeanReversion(f"b estimate {est.b_est!r} is zero; mu is undefined")
    return AlphaMuEstimate(alpha_est=est.b_est, mu_est=est.a_est / est.b_est)


def mle_alpha_mu(stats: PathStatistics) -> AlphaMuEstimate:
    """Likelihood maximizer written directly in the (alpha, mu) parametrization."""
    D = _mle_denominator(stats)
    T = stats.horizon
    rise = stats.r_end - stats.r_start
    rate_numerator = T * stats.int_dr_over_r - stats.int_inv_r * rise
    if abs(rate_numerator) <= ZERO_TOLERANCE * D:
        raise ZeroMeanReversion("alpha estimate is zero; mu is undefined")
    alpha_est = rate_numerator / D
    mu_est = (stats.int_r * stats.int_dr_over_r - T * rise) / rate_numerator
    return AlphaMuEstimate(alpha_est=alpha_est, mu_est=mu_est)


def alt_alpha_mu(stats: PathStatistics, sigma: float) -> AlphaMuEstimate:
    est = alt_estimate(stats, sigma)
    return AlphaMuEstimate(alpha_est=est.b_est, mu_est=stats.int_r / stats.horizon)


def residual_decomposition(path, true_params, inv_floor: float = DEFAULT_INV_FLOOR) -> ResidualTerms:
    """
    Stochastic remainders with mle_estimate = (a + R_a, b + R_b). On a
    full-truncation path that stays above the floor the identity is exact up
    to rounding, because the statistics use the same left-endpoint sums.
    """
    if path.noise is None:
        raise MissingNoise("residual decomposition needs the stored Wiener increments")
    stats = path_statistics(path, inv_floor)
    D = _mle_denominator(stats)
    T = stats.horizon
    sigma = true_params.sigma
    s_inv, s_sqrt = stochastic_sums(path)
    r_a = (sigma * s_inv * stats.int_r - sigma * T * s_sqrt) / D
    r_b = (-sigma * s_sqrt * stats.int_inv_r + sigma * T * s_inv) / D
    return ResidualTerms(r_a, r_b)
