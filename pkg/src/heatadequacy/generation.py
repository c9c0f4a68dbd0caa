"""Conventional generation (capacity outage table) and wind output."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import probdist
from .errors import EmptyData, EmptyFleet, InvalidValue
from .probdist import CapacityDistribution, DEFAULT_GRID_STEP, snap_index
from .series import HourlySeries

INTERCONNECTOR = "interconnector"
INTERCONNECTOR_AVAILABILITY = 0.80


@dataclass(frozen=True)
class GeneratingUnit:
    """Two-state unit: full ``capacity`` with probability ``availability``, else 0."""

    unit_id: str
    technology: str
    capacity: float
    availability: float

    def __post_init__(self):
        if not (np.isfinite(self.capacity) and self.capacity > 0):
            raise InvalidValue(f"unit {self.unit_id}: capacity must be > 0, got {self.capacity}")
        if not 0 < self.availability <= 1:
            raise InvalidValue(
                f"unit {self.unit_id}: availability must be in (0, 1], got {self.availability}"
            )


@dataclass(frozen=True)
class Fleet:
    units: tuple
    c_on: float = 0.0
    c_off: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "units", tuple(self.units))
        ids = [u.unit_id for u in self.units]
        if len(set(ids)) != len(ids):
            raise InvalidValue("unit ids must be unique within a fleet")
        if self.c_on < 0 or self.c_off < 0:
            raise InvalidValue("wind capacities must be non-negative")

    def capacity_by_technology(self):
        totals = {}
        for u in self.units:
            totals[u.technology] = totals.get(u.technology, 0.0) + u.capacity
        return totals


@dataclass(frozen=True, eq=False)
class WindSeries:
    timestamps: np.ndarray = field(repr=False)
    onshore: np.ndarray = field(repr=False)
    offshore: np.ndarray = field(repr=False)

    def __post_init__(self):
        # HourlySeries does the timestamp checks
        on = HourlySeries(self.timestamps, self.onshore)
        off = HourlySeries(self.timestamps, self.offshore)
        for name, s in (("cf_onshore", on), ("cf_offshore", off)):
            if np.any((s.values < 0) | (s.values > 1)):
                raise InvalidValue(f"{name} capacity factors must lie in [0, 1]")
        object.__setattr__(self, "timestamps", on.timestamps)
        object.__setattr__(self, "onshore", on.values)
        object.__setattr__(self, "offshore", off.values)

    def __len__(self):
        return self.onshore.size

    def select(self, start, end):
        m = (self.timestamps >= np.datetime64(start, "s")) & (
            self.timestamps < np.datetime64(end, "s")
        )
        return WindSeries(self.timestamps[m], self.onshore[m], self.offshore[m])


def build_copt(fleet, grid_step=DEFAULT_GRID_STEP):
    """Capacity outage probability table of the conventional units.

    Each unit contributes ``{0: 1 - a, capacity: a}``; capacities are snapped
    to the grid (half to even) so the whole chain stays on one grid.
    """
    if not fleet.units:
        raise EmptyFleet("fleet has no conventional units")
    steps = snap_index([u.capacity for u in fleet.units], grid_step)
    p = np.zeros(int(steps.sum()) + 1)
    p[0] = 1.0
    top = 0
    for k, unit in zip(steps, fleet.units):
        if k == 0:
            continue
        a = unit.availability
        up = p[: top + 1] * a
        p[: top + 1] *= 1 - a
        p[k : top + k + 1] += up
        top += k
    return CapacityDistribution(grid_step, 0, p)


def wind_output_series(wind, c_on, c_off):
    """Concurrent hourly wind output ``c_on * W_on + c_off * W_off`` in MW."""
    if c_on < 0 or c_off < 0:
        raise InvalidValue("wind capacities must be non-negative")
    on = np.asarray(wind.onshore)
    off = np.asarray(wind.offshore)
    if np.any((on < 0) | (on > 1) | (off < 0) | (off > 1)):
        raise InvalidValue("capacity factors must lie in [0, 1]")
    return HourlySeries(wind.timestamps, c_on * on + c_off * off)


def total_generation_distribution(copt, wind_samples, grid_step=DEFAULT_GRID_STEP):
    """Distribution of conventional plus wind generation, assumed independent."""
    values = wind_samples.values if isinstance(wind_samples, HourlySeries) else wind_samples
    if len(values) == 0:
        raise EmptyData("no wind samples")
    return probdist.convolve(copt, probdist.from_samples(values, grid_step))
