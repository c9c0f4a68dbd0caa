"""Time series containers.

Timestamps are naive ``datetime64`` values interpreted as UTC. Hourly series
use second resolution, daily series use day resolution.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import AlignmentError, InvalidSeries

HOUR = np.timedelta64(3600, "s")


def _frozen(a):
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class HourlySeries:
    """Hourly MW records; gaps are allowed, duplicates and disorder are not."""

    timestamps: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        ts = np.asarray(self.timestamps, dtype="datetime64[s]")
        v = np.asarray(self.values, dtype=float)
        if ts.shape != v.shape or ts.ndim != 1:
            raise InvalidSeries("timestamps and values must be 1-D and equal length")
        if ts.size > 1:
            step = np.diff(ts)
            if np.any(step <= np.timedelta64(0, "s")):
                raise InvalidSeries("timestamps must be strictly increasing")
            if np.any(step % HOUR != np.timedelta64(0, "s")):
                raise InvalidSeries("timestamps must lie on whole hours")
        if not np.all(np.isfinite(v)):
            raise InvalidSeries("values must be finite")
        object.__setattr__(self, "timestamps", _frozen(ts))
        object.__setattr__(self, "values", _frozen(v))

    def __len__(self):
        return self.values.size

    def with_values(self, values):
        return HourlySeries(self.timestamps, values)

    def select(self, start, end):
        """Records with ``start <= t < end``."""
        m = (self.timestamps >= np.datetime64(start, "s")) & (
            self.timestamps < np.datetime64(end, "s")
        )
        return HourlySeries(self.timestamps[m], self.values[m])

    def reindex(self, timestamps):
        """Values at exactly ``timestamps``; every one must be present."""
        timestamps = np.asarray(timestamps, dtype="datetime64[s]")
        pos = np.searchsorted(self.timestamps, timestamps)
        ok = (pos < len(self)) & (self.timestamps[np.minimum(pos, len(self) - 1)] == timestamps)
        if len(self) == 0 or not np.all(ok):
            missing = timestamps[~ok] if len(self) else timestamps
            raise AlignmentError(
                f"{missing.size} timestamps missing, first {missing[0] if missing.size else None}"
            )
        return HourlySeries(timestamps, self.values[pos])

    def energy_mwh(self):
        return float(self.values.sum())


@dataclass(frozen=True, eq=False)
class DailySeries:
    """Daily records: GWh/day for gas energy, degC for temperature, MW for daily demand."""

    dates: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        d = np.asarray(self.dates, dtype="datetime64[D]")
        v = np.asarray(self.values, dtype=float)
        if d.shape != v.shape or d.ndim != 1:
            raise InvalidSeries("dates and values must be 1-D and equal length")
        if d.size > 1 and np.any(np.diff(d) <= np.timedelta64(0, "D")):
            raise InvalidSeries("dates must be strictly increasing")
        if not np.all(np.isfinite(v)):
            raise InvalidSeries("values must be finite")
        object.__setattr__(self, "dates", _frozen(d))
        object.__setattr__(self, "values", _frozen(v))

    def __len__(self):
        return self.values.size

    def select(self, start, end):
        m = (self.dates >= np.datetime64(start, "D")) & (self.dates < np.datetime64(end, "D"))
        return DailySeries(self.dates[m], self.values[m])


def intersect_timestamps(*series):
    """Common timestamps of hourly series (the evaluation window)."""
    common = series[0].timestamps
    for s in series[1:]:
        common = np.intersect1d(common, s.timestamps, assume_unique=True)
    return common


def align_daily(a, b):
    """Values of two daily series on their common dates."""
    common, ia, ib = np.intersect1d(a.dates, b.dates, assume_unique=True, return_indices=True)
    return common, a.values[ia], b.values[ib]
