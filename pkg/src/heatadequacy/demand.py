"""Underlying electrical demand, electrified heat demand and effective demand.

Heat demand models:

* ``M0``: no electrified heat.
* ``M1``: heat follows the electricity profile, ``H = k * E``.
* ``M2``: heat follows daily gas demand spread flat over each day, ``H = k * G``.

In ``M1`` and ``M2`` the scaling is ``k = growth / (base_energy * k_dsr * k_cop)``,
where ``growth = years_of_growth * eps_delta_h`` and ``base_energy`` is the annual
electricity (``eps_e``) or gas (``eps_g``) energy.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

import numpy as np

from .errors import AlignmentError, InvalidParams, InvalidSeries, InvalidValue, NotApplicable
from .series import HOUR, HourlySeries

RESERVE_MW = 1320.0


class HeatModel(str, enum.Enum):
    M0 = "M0"
    M1 = "M1"
    M2 = "M2"

    @classmethod
    def parse(cls, text):
        if isinstance(text, cls):
            return text
        try:
            return cls(str(text).upper())
        except ValueError:
            raise InvalidParams(f"unknown heat model {text!r}") from None


@dataclass(frozen=True)
class HeatParams:
    """Electrification parameters; energies in TWh/yr."""

    eps_delta_h: float = 12.5
    eps_e: float = 285.0
    eps_g: float = 440.0
    k_dsr: float = 1.0
    k_cop: float = 1.9
    model: HeatModel = HeatModel.M0
    years_of_growth: int = 0
    reserve_r: float = RESERVE_MW

    def __post_init__(self):
        object.__setattr__(self, "model", HeatModel.parse(self.model))
        if not self.k_dsr > 0 or not self.k_cop > 0:
            raise InvalidParams("k_dsr and k_cop must be positive")
        if self.years_of_growth < 0:
            raise InvalidParams("years_of_growth must be >= 0")
        if self.reserve_r < 0:
            raise InvalidParams("reserve_r must be >= 0")
        if self.eps_delta_h < 0:
            raise InvalidParams("eps_delta_h must be >= 0")
        if self.model is HeatModel.M1 and not self.eps_e > 0:
            raise InvalidParams("eps_e must be positive for M1")
        if self.model is HeatModel.M2 and not self.eps_g > 0:
            raise InvalidParams("eps_g must be positive for M2")

    def evolve(self, **changes):
        return replace(self, **changes)


def detrend_and_rescale(e_raw, target_peak):
    """Remove the least-squares linear trend and rescale to ``target_peak``.

    The trend is removed relative to the final timestamp, so the result keeps
    the level of the most recent data. The uniform rescale makes the maximum
    equal ``target_peak`` exactly.
    """
    if len(e_raw) < 2:
        raise InvalidSeries("need at least two records to detrend")
    if not target_peak > 0:
        raise InvalidValue("target_peak must be positive")
    t = (e_raw.timestamps - e_raw.timestamps[0]) / HOUR
    t = t.astype(float)
    tc = t - t.mean()
    sxx = float(np.dot(tc, tc))
    if sxx == 0:
        raise InvalidSeries("timestamps are degenerate")
    v = e_raw.values
    slope = float(np.dot(tc, v - v.mean())) / sxx
    detrended = v - slope * (t - t[-1])
    peak = detrended.max()
    if not peak > 0:
        raise InvalidSeries("detrended series has no positive peak")
    # v / peak is exactly 1.0 at the maximum
    return e_raw.with_values(detrended / peak * target_peak)


def spread_daily_to_hourly(g):
    """Daily GWh/day split evenly into 24 hourly MW records."""
    values = np.asarray(g.values)
    if np.any(values < 0):
        raise InvalidValue("daily energy must be non-negative")
    start = g.dates.astype("datetime64[s]")
    ts = (start[:, None] + np.arange(24) * HOUR).ravel()
    return HourlySeries(ts, np.repeat(values * 1000.0 / 24.0, 24))


def heat_sensitivity_coefficient(p):
    """The dimensionless heat scaling ``k`` for model ``M1`` or ``M2``."""
    if p.model is HeatModel.M0:
        raise NotApplicable("M0 has no heat scaling coefficient")
    base = p.eps_e if p.model is HeatModel.M1 else p.eps_g
    denom = base * p.k_dsr * p.k_cop
    if denom == 0:
        raise InvalidParams("zero denominator in heat coefficient")
    return p.years_of_growth * p.eps_delta_h / denom


def heat_series(p, e, g_hourly=None):
    """Electrified heat demand on the timestamps of ``e``."""
    if p.model is HeatModel.M0:
        return e.with_values(np.zeros(len(e)))
    k = heat_sensitivity_coefficient(p)
    if p.model is HeatModel.M1:
        if len(e) == 0:
            raise AlignmentError("electricity series is empty")
        return e.with_values(k * e.values)
    if g_hourly is None or len(g_hourly) == 0:
        raise AlignmentError("M2 needs an hourly gas series")
    g = g_hourly.reindex(e.timestamps)
    return g.with_values(k * g.values)


def effective_demand_series(e, h, reserve_r=RESERVE_MW):
    """Pointwise ``E + H + r``."""
    if len(e) != len(h) or not np.array_equal(e.timestamps, h.timestamps):
        raise AlignmentError("electricity and heat series have different timestamps")
    return e.with_values(e.values + h.values + reserve_r)
