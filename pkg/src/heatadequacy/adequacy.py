"""Margin distribution, shortfall metrics and the annual peak distribution."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import probdist
from .errors import InvalidValue
from .probdist import CapacityDistribution
from .weather import RegressionFit

SEASON_HOURS = 20 * 7 * 24


@dataclass(frozen=True)
class AdequacyReport:
    year: int
    model: str
    param_set: str
    lole: float
    eeu: float
    peak_q95: float
    peak_iqr: float
    regression: RegressionFit
    n_periods: int
    seed: int = 0


def _check_periods(n):
    if int(n) != n or n < 1:
        raise InvalidValue(f"n_periods must be a positive integer, got {n}")
    return int(n)


def margin_distribution(gen, demand):
    """Distribution of generation minus demand, treated as independent."""
    return probdist.convolve(gen, probdist.negate(demand))


def shortfall_probability(z):
    """``P(Z < 0)``; a zero margin is adequate."""
    return float(z.probabilities[z.indices < 0].sum())


def lole(z, n_periods=SEASON_HOURS):
    """Loss of load expectation in hours per season."""
    return _check_periods(n_periods) * shortfall_probability(z)


def eeu(z, n_periods=SEASON_HOURS):
    """Expected energy unserved in MWh per season, for one-hour periods."""
    neg = z.indices < 0
    depth = -z.support[neg]
    return _check_periods(n_periods) * float(np.dot(depth, z.probabilities[neg]))


def peak_distribution(demand, n_periods=SEASON_HOURS):
    """Distribution of the maximum of ``n_periods`` independent demand draws."""
    n = _check_periods(n_periods)
    c = demand.cumulative()
    f = (c / c[-1]) ** n
    pmf = np.diff(f, prepend=0.0)
    return CapacityDistribution(demand.grid_step, demand.offset, np.maximum(pmf, 0.0))


def peak_summary(p):
    """1-in-20 peak (95% quantile) and interquartile range."""
    q95 = probdist.quantile(p, 0.95)
    iqr = probdist.quantile(p, 0.75) - probdist.quantile(p, 0.25)
    return q95, iqr


def survival_points(d):
    """``(x, 1 - F(x))`` at every support point."""
    return d.support, 1.0 - np.minimum(d.cumulative(), 1.0)
