"""Seeded generator of GB-like demand, weather, wind and unit data.

The construction is simple on purpose so that tests can check what went in:

* zonal minimum temperature = annual sinusoid + shared AR(1) anomaly with
  occasional multi-day cold snaps + fixed zone offset + independent zone noise;
* hourly electricity = base + trend + slope * composite T + diurnal and
  weekday shapes + AR(1) noise;
* daily NDM gas = level + seasonal amplitude * annual cosine + gas slope *
  composite T + noise; level and amplitude are solved so annual energy and
  the peak-to-mean ratio over the peak seasons both hit their targets;
* wind capacity factors = Beta quantiles of a persistent Gaussian latent
  that is only weakly tied to the temperature anomaly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import optimize, signal, special, stats

from .errors import InvalidParams
from .generation import GeneratingUnit, WindSeries
from .ingest import Dataset
from .scenario import UnitPool, season_window
from .series import HOUR, DailySeries, HourlySeries
from .weather import ZonalTemperatures, composite_temperature

# winter weekday load shape, per unit of daily peak (hour 0 = 00:00 UTC)
DIURNAL = np.array([
    0.67, 0.63, 0.60, 0.59, 0.59, 0.60, 0.70, 0.82, 0.90, 0.92, 0.92, 0.91,
    0.90, 0.89, 0.88, 0.90, 0.96, 1.00, 0.99, 0.95, 0.90, 0.84, 0.77, 0.70,
])
# Monday first; sums to zero
WEEKDAY = np.array([0.4, 0.45, 0.45, 0.4, 0.2, -0.8, -1.1])

UNIT_PROTOTYPES = [
    ("NUC-A", "nuclear", 1200.0, 0.84),
    ("NUC-B", "nuclear", 600.0, 0.86),
    ("CCGT-A", "ccgt", 420.0, 0.88),
    ("CCGT-B", "ccgt", 800.0, 0.87),
    ("CCGT-C", "ccgt", 860.0, 0.87),
    ("COAL-A", "coal", 500.0, 0.85),
    ("COAL-B", "coal", 660.0, 0.84),
    ("BIO-A", "biomass", 645.0, 0.88),
    ("PS-A", "pumped_storage", 300.0, 0.97),
    ("OCGT-A", "ocgt", 100.0, 0.94),
    ("OCGT-B", "ocgt", 140.0, 0.93),
    ("IC-A", "interconnector", 1000.0, 0.80),
    ("IC-B", "interconnector", 1400.0, 0.80),
    ("IC-C", "interconnector", 2000.0, 0.80),
]


@dataclass(frozen=True)
class SynthParams:
    n_winters: int = 5
    start_year: int = 2013
    n_zones: int = 14
    elec_temp_slope: float = -500.0  # MW/degC
    gas_temp_slope: float = -150.0  # GWh/day/degC
    gas_peak_to_mean: float = 1.7
    elec_base_mw: float = 36000.0
    elec_trend_mw_per_year: float = -300.0
    diurnal_amplitude_mw: float = 14000.0
    weekday_amplitude_mw: float = 1500.0
    elec_noise_mw: float = 700.0
    gas_noise_gwh: float = 60.0
    gas_annual_twh: float = 440.0
    gas_floor_gwh: float = 250.0
    temp_mean_c: float = 7.0
    temp_amplitude_c: float = 6.0
    temp_anomaly_sd: float = 3.0
    temp_persistence: float = 0.85
    zone_noise_c: float = 1.0
    cold_snaps_per_winter: float = 1.0
    cold_snap_depth_c: float = 5.0
    wind_temp_corr: float = 0.05
    seed: int = 0

    def __post_init__(self):
        if self.n_winters < 1:
            raise InvalidParams("n_winters must be at least 1")
        if self.n_zones < 1:
            raise InvalidParams("n_zones must be at least 1")
        if self.elec_temp_slope > 0 or self.gas_temp_slope > 0:
            raise InvalidParams("demand must not fall as temperature falls (slopes <= 0)")
        if self.gas_peak_to_mean < 1:
            raise InvalidParams("gas_peak_to_mean must be >= 1")
        if min(self.elec_noise_mw, self.gas_noise_gwh, self.zone_noise_c,
               self.temp_anomaly_sd) < 0:
            raise InvalidParams("noise levels must be non-negative")
        if not 0 <= self.temp_persistence < 1 or not 0 <= abs(self.wind_temp_corr) <= 1:
            raise InvalidParams("persistence must be in [0, 1) and correlation in [-1, 1]")


def _ar1(rng, n, phi, sd):
    """Stationary AR(1) with marginal standard deviation ``sd``."""
    u = rng.standard_normal(n)
    u[1:] *= np.sqrt(1 - phi * phi)
    x = signal.lfilter([1.0], [1.0, -phi], u)
    return sd * x


def _cold_snaps(rng, dates, p):
    """Temperature drops of a few days, placed at random inside each peak season."""
    drop = np.zeros(dates.size)
    for y in range(p.start_year, p.start_year + p.n_winters):
        start, _, _ = season_window(y)
        first = int((start.astype("datetime64[D]") - dates[0]).astype(int))
        for _ in range(rng.poisson(p.cold_snaps_per_winter)):
            length = int(rng.integers(4, 10))
            at = first + int(rng.integers(0, 140 - length))
            depth = p.cold_snap_depth_c * rng.uniform(0.5, 1.5)
            drop[at : at + length] += depth * np.hanning(length + 2)[1:-1]
    return drop


def season_mask(dates, start_year, n_winters):
    """Dates falling inside the generated peak seasons."""
    m = np.zeros(dates.size, dtype=bool)
    for y in range(start_year, start_year + n_winters):
        s, e, _ = season_window(y)
        m |= (dates >= s.astype("datetime64[D]")) & (dates < e.astype("datetime64[D]"))
    return m


def _calibrate_gas(p, x, season, win):
    """Daily gas ``level + amplitude * season + x`` meeting the energy and peak targets.

    For a given seasonal amplitude the level is the root of the annual energy
    condition (floor clip included). The amplitude is then the root of the
    peak-to-mean condition over the season windows. If the ratio target is
    out of reach the best amplitude on the search grid is used.
    """
    target = p.gas_annual_twh * 1000.0 / 365.25

    def shaped(amp):
        base = amp * season + x
        f = lambda lv: np.maximum(lv + base, p.gas_floor_gwh).mean() - target  # noqa: E731
        lo = p.gas_floor_gwh - base.max() - 1.0
        hi = target - base.min() + 1.0
        return np.maximum(optimize.brentq(f, lo, hi, xtol=1e-10) + base, p.gas_floor_gwh)

    def ratio_gap(amp):
        g = shaped(amp)[win]
        return g.max() / g.mean() - p.gas_peak_to_mean

    # the ratio first falls with amplitude, then rises once summers hit the floor
    grid = np.linspace(0.0, 2.0 * target, 81)
    gaps = np.array([ratio_gap(a) for a in grid])
    cross = np.flatnonzero(np.sign(gaps[:-1]) != np.sign(gaps[1:]))
    if cross.size:
        i = cross[0]
        amp = optimize.brentq(ratio_gap, grid[i], grid[i + 1], xtol=1e-8)
    else:
        amp = grid[np.argmin(np.abs(gaps))]
    return shaped(amp)


def generate_synthetic(p=None):
    """Deterministic synthetic :class:`Dataset` for ``p.seed``."""
    p = p or SynthParams()
    rng = np.random.default_rng(np.random.SeedSequence(p.seed))
    r_temp, r_elec, r_gas, r_wind, r_zone = rng.spawn(5)

    start = np.datetime64(f"{p.start_year}-07-01")
    end = np.datetime64(f"{p.start_year + p.n_winters}-07-01")
    dates = np.arange(start, end)
    nd = dates.size

    doy = (dates - dates.astype("datetime64[Y]")).astype(float)
    seasonal = p.temp_mean_c - p.temp_amplitude_c * np.cos(2 * np.pi * (doy - 20) / 365.25)
    anomaly = _ar1(r_temp, nd, p.temp_persistence, p.temp_anomaly_sd)
    anomaly -= _cold_snaps(r_temp, dates, p)
    offsets = r_zone.normal(0.0, 1.0, p.n_zones)
    peaks = np.round(r_zone.uniform(1500, 6500, p.n_zones), -1)
    ids = [f"Z{i + 1:02d}" for i in range(p.n_zones)]
    zones = {}
    for i, zid in enumerate(ids):
        t = seasonal + anomaly + offsets[i] + r_zone.normal(0.0, p.zone_noise_c, nd)
        zones[zid] = DailySeries(dates, np.round(t, 2))
    temps = ZonalTemperatures(zones, dict(zip(ids, peaks.tolist())))
    t_comp = composite_temperature(temps).values

    hours = (dates.astype("datetime64[s]")[:, None] + np.arange(24) * HOUR).ravel()
    n_h = hours.size
    hod = np.tile(np.arange(24), nd)
    dow = np.repeat((dates.astype("datetime64[D]").astype(np.int64) + 3) % 7, 24)
    shape = (DIURNAL - DIURNAL.mean()) / (DIURNAL.max() - DIURNAL.mean())
    years = (hours - hours[0]) / np.timedelta64(365 * 24 + 6, "h")
    elec = (
        p.elec_base_mw
        + p.elec_trend_mw_per_year * years
        + p.elec_temp_slope * np.repeat(t_comp, 24)
        + p.diurnal_amplitude_mw * shape[hod]
        + p.weekday_amplitude_mw * WEEKDAY[dow]
        + _ar1(r_elec, n_h, 0.9, p.elec_noise_mw)
    )
    electricity = HourlySeries(hours, np.round(elec, 1))

    x = p.gas_temp_slope * t_comp + r_gas.normal(0.0, p.gas_noise_gwh, nd)
    win = season_mask(dates, p.start_year, p.n_winters)
    gas = DailySeries(dates, np.round(_calibrate_gas(p, x, np.cos(2 * np.pi * (doy - 20) / 365.25), win), 2))

    rho = p.wind_temp_corr
    a_std = np.repeat(anomaly / (anomaly.std() or 1.0), 24)
    z1 = _ar1(r_wind, n_h, 0.985, 1.0)
    z2 = _ar1(r_wind, n_h, 0.985, 1.0)
    k = np.sqrt(1 - rho * rho)
    on = stats.beta.ppf(special.ndtr(rho * a_std + k * z1), 1.4, 2.4)
    off = stats.beta.ppf(special.ndtr(rho * a_std + k * (0.8 * z1 + 0.6 * z2)), 1.8, 2.0)
    wind = WindSeries(hours, np.round(on, 4), np.round(off, 4))

    pool = UnitPool(tuple(GeneratingUnit(*u) for u in UNIT_PROTOTYPES))
    return Dataset(electricity, gas, wind, temps, pool)


def gas_peak_to_mean(data, start_year, n_winters):
    """Peak-to-mean ratio of daily gas over the peak seasons."""
    m = season_mask(data.gas.dates, start_year, n_winters)
    g = data.gas.values[m]
    return float(g.max() / g.mean())
