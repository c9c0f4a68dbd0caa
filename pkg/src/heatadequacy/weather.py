"""Composite temperature and the linear demand-temperature fit."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AlignmentError, DegenerateRegressor, EmptyData, InvalidValue
from .series import DailySeries, align_daily


@dataclass(frozen=True)
class ZonalTemperatures:
    """Per-zone minimum daily temperature with non-negative zone weights."""

    zones: dict
    weights: dict

    def __post_init__(self):
        if not self.zones:
            raise EmptyData("at least one temperature zone is required")
        if set(self.zones) != set(self.weights):
            raise InvalidValue("zones and weights must name the same zone ids")
        w = np.array([self.weights[z] for z in self.zones], dtype=float)
        if np.any(w < 0) or not w.sum() > 0:
            raise InvalidValue("zone weights must be non-negative and not all zero")

    def normalized_weights(self):
        total = float(sum(self.weights.values()))
        return {z: self.weights[z] / total for z in self.zones}


@dataclass(frozen=True)
class RegressionFit:
    k_t: float
    d0: float
    se_kt: float
    r_squared: float
    n_points: int

    def predict(self, t):
        return self.d0 + self.k_t * np.asarray(t, dtype=float)


def composite_temperature(z):
    """Weighted sum of zonal temperatures on the dates every zone covers."""
    w = z.normalized_weights()
    ids = list(z.zones)
    common = z.zones[ids[0]].dates
    for zid in ids[1:]:
        common = np.intersect1d(common, z.zones[zid].dates, assume_unique=True)
    if common.size == 0:
        raise AlignmentError("temperature zones share no dates")
    total = np.zeros(common.size)
    for zid in ids:
        s = z.zones[zid]
        total += w[zid] * s.values[np.searchsorted(s.dates, common)]
    return DailySeries(common, total)


def daily_demand(hourly, statistic="mean"):
    """Collapse an hourly MW series to one value per calendar date."""
    if statistic not in ("mean", "max"):
        raise InvalidValue(f"daily statistic must be 'mean' or 'max', got {statistic!r}")
    days = hourly.timestamps.astype("datetime64[D]")
    dates, start = np.unique(days, return_index=True)
    if statistic == "mean":
        counts = np.diff(np.append(start, days.size))
        values = np.add.reduceat(hourly.values, start) / counts
    else:
        values = np.maximum.reduceat(hourly.values, start)
    return DailySeries(dates, values)


def ols(x, y):
    """Slope, intercept, slope standard error and R^2 of ``y`` on ``x``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = x.size
    xc = x - x.mean()
    sxx = float(np.dot(xc, xc))
    if sxx <= 1e-12 * max(1.0, float(np.dot(x, x))):
        raise DegenerateRegressor("regressor has no variance")
    yc = y - y.mean()
    slope = float(np.dot(xc, yc)) / sxx
    intercept = float(y.mean() - slope * x.mean())
    resid = yc - slope * xc
    ssr = float(np.dot(resid, resid))
    sst = float(np.dot(yc, yc))
    se = float(np.sqrt(ssr / (n - 2) / sxx)) if n > 2 else float("nan")
    r2 = 1.0 if sst == 0 else min(1.0, max(0.0, 1.0 - ssr / sst))
    return slope, intercept, se, r2


def fit_temperature_regression(d_daily, t_daily):
    """Least-squares fit of daily demand on composite minimum temperature."""
    dates, d, t = align_daily(d_daily, t_daily)
    if dates.size < 3:
        raise AlignmentError(f"need at least 3 overlapping dates, got {dates.size}")
    k_t, d0, se, r2 = ols(t, d)
    return RegressionFit(k_t=k_t, d0=d0, se_kt=se, r_squared=r2, n_points=int(dates.size))
