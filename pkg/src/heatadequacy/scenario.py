"""Multi-year scenario runs.

A scenario evaluates every (year, heat model, parameter set) combination.
Historic data from all complete peak seasons in the dataset is pooled into
one empirical sample; each forecast year differs only in its generation
fleet and in the years of heat-demand growth (``year - base_year``).

Random fleet synthesis is seeded per (year, technology):
``SeedSequence(rng_seed, spawn_key=(year, crc32(technology)))``. The heat
model does not enter the seed, so every model of a given year sees the same
fleet and serial or parallel evaluation give identical results.
"""

from __future__ import annotations

import datetime as dt
import json
import logging
import zlib
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from . import adequacy, demand, generation, probdist, weather
from .demand import HeatModel, HeatParams
from .errors import ConfigError, DataCoverageError, InvalidValue, MissingTechnology
from .generation import Fleet, GeneratingUnit
from .series import HOUR

log = logging.getLogger(__name__)

SEASON_DAYS = 140
WIND_ONSHORE = "wind_onshore"
WIND_OFFSHORE = "wind_offshore"
AVAILABILITY_BAND = (0.81, 0.97)
DEMAND_MODES = ("empirical", "temperature-driven")


def season_window(year):
    """Peak season: 140 days from 00:00 on the first Sunday of November."""
    nov1 = dt.date(int(year), 11, 1)
    first_sunday = nov1 + dt.timedelta(days=(6 - nov1.weekday()) % 7)
    start = np.datetime64(first_sunday.isoformat(), "s")
    end = start + np.timedelta64(SEASON_DAYS, "D")
    return start, end, SEASON_DAYS * 24


@dataclass(frozen=True)
class UnitPool:
    """Prototype units from which fleets are drawn."""

    units: tuple

    def __post_init__(self):
        object.__setattr__(self, "units", tuple(self.units))
        lo, hi = AVAILABILITY_BAND
        for u in self.units:
            if u.technology != generation.INTERCONNECTOR and not lo <= u.availability <= hi:
                log.warning(
                    "unit %s availability %.3f outside typical band %.2f-%.2f",
                    u.unit_id, u.availability, lo, hi,
                )

    def technologies(self):
        return sorted({u.technology for u in self.units})

    def of(self, technology):
        return [u for u in self.units if u.technology == technology]


def fleet_rng(seed, year, technology):
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(year), zlib.crc32(technology.encode())))
    return np.random.default_rng(ss)


def synthesize_fleet(pool, quotas, seed, year=0):
    """Draw units per technology until each capacity quota is met exactly.

    Units are drawn uniformly with replacement; the last unit drawn is cut
    down so the technology total equals its quota. The ``wind_onshore`` and
    ``wind_offshore`` quotas become the fleet's wind capacities.
    """
    c_on = float(quotas.get(WIND_ONSHORE, 0.0))
    c_off = float(quotas.get(WIND_OFFSHORE, 0.0))
    units = []
    for tech in sorted(quotas):
        if tech in (WIND_ONSHORE, WIND_OFFSHORE):
            continue
        quota = float(quotas[tech])
        if quota < 0:
            raise InvalidValue(f"quota for {tech} is negative")
        if quota == 0:
            continue
        protos = pool.of(tech)
        if not protos:
            raise MissingTechnology(f"technology {tech!r} has a quota but no pool units")
        rng = fleet_rng(seed, year, tech)
        total = 0.0
        i = 0
        while total < quota:
            proto = protos[int(rng.integers(len(protos)))]
            cap = min(proto.capacity, quota - total)
            units.append(
                GeneratingUnit(f"{tech}-{i:04d}-{proto.unit_id}", tech, cap, proto.availability)
            )
            total += cap
            i += 1
    return Fleet(tuple(units), c_on=c_on, c_off=c_off)


@dataclass
class ScenarioConfig:
    base_year: int = 2018
    horizon_years: int = 5
    capacities: dict = field(default_factory=dict)
    param_sets: dict = field(default_factory=dict)
    target_peak: float = 57000.0
    grid_step: float = probdist.DEFAULT_GRID_STEP
    demand_mode: str = "empirical"
    rng_seed: int = 0
    models: tuple = ("M0", "M1", "M2")
    daily_statistic: str = "mean"
    n_periods: int = adequacy.SEASON_HOURS

    def __post_init__(self):
        if self.horizon_years < 0:
            raise ConfigError("horizon_years must be >= 0")
        if not self.param_sets:
            raise ConfigError("at least one parameter set is required")
        if self.demand_mode == "temperature":
            self.demand_mode = "temperature-driven"
        if self.demand_mode not in DEMAND_MODES:
            raise ConfigError(f"demand_mode must be one of {DEMAND_MODES}")
        if not self.grid_step > 0 or not self.target_peak > 0:
            raise ConfigError("grid_step and target_peak must be positive")
        if self.daily_statistic not in ("mean", "max"):
            raise ConfigError("daily_statistic must be 'mean' or 'max'")
        try:
            self.models = tuple(HeatModel.parse(m).value for m in self.models)
        except Exception as exc:
            raise ConfigError(str(exc)) from None
        self.capacities = {int(y): dict(q) for y, q in self.capacities.items()}
        for y, q in self.capacities.items():
            if any(v < 0 for v in q.values()):
                raise ConfigError(f"negative capacity quota in year {y}")
        for year in self.years:
            if year not in self.capacities:
                raise ConfigError(f"no capacity quotas for year {year}")
        for name, ps in self.param_sets.items():
            try:
                HeatParams(**ps)
            except TypeError as exc:
                raise ConfigError(f"parameter set {name!r}: {exc}") from None
            except ValueError as exc:
                raise ConfigError(f"parameter set {name!r}: {exc}") from None

    @property
    def years(self):
        return [self.base_year + i for i in range(self.horizon_years + 1)]

    def to_dict(self):
        out = {f.name: getattr(self, f.name) for f in fields(self)}
        out["capacities"] = {str(y): q for y, q in self.capacities.items()}
        out["models"] = list(self.models)
        return out

    @classmethod
    def from_dict(cls, raw):
        known = {f.name for f in fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        return cls(**raw)

    @classmethod
    def load(cls, path):
        try:
            raw = json.loads(Path(path).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc}") from None
        if not isinstance(raw, dict):
            raise ConfigError(f"{path}: top level must be an object")
        return cls.from_dict(raw)


# Low and high sets are illustrative; medium holds the central values.
DEFAULT_PARAM_SETS = {
    "low": {"k_cop": 1.5, "k_dsr": 0.75},
    "medium": {"k_cop": 1.9, "k_dsr": 1.0},
    "high": {"k_cop": 2.5, "k_dsr": 1.25},
}


def default_config(**overrides):
    """GB-like 2018-2023 scenario sized for the default synthetic dataset."""
    thermal_2018 = {"nuclear": 8900, "ccgt": 41500, "coal": 6000, "biomass": 3000,
                    "pumped_storage": 2800, "ocgt": 1500}
    retire = {"coal": -1200, "nuclear": -400}
    capacities = {}
    for i in range(6):
        q = {t: v + retire.get(t, 0) * i for t, v in thermal_2018.items()}
        q["interconnector"] = round(4000 + (11700 - 4000) * i / 5, -2)
        q[WIND_ONSHORE] = round(12600 + 900 * i, -1)
        q[WIND_OFFSHORE] = round(8300 + 400 * i, -1)
        capacities[str(2018 + i)] = q
    raw = dict(
        base_year=2018,
        horizon_years=5,
        capacities=capacities,
        param_sets={k: dict(v) for k, v in DEFAULT_PARAM_SETS.items()},
        target_peak=57000.0,
        grid_step=10.0,
        demand_mode="empirical",
        rng_seed=2018,
        models=["M0", "M1", "M2"],
    )
    raw.update(overrides)
    return ScenarioConfig.from_dict(raw)


@dataclass(frozen=True)
class PreparedData:
    """Historic inputs restricted to the pooled peak seasons."""

    seasons: tuple
    electricity: object
    gas_hourly: object
    wind: object
    temperature: object


def covered_seasons(data):
    """Season start years whose whole window lies inside every input series."""
    spans = [
        (data.electricity.timestamps[0], data.electricity.timestamps[-1] + HOUR),
        (data.wind.timestamps[0], data.wind.timestamps[-1] + HOUR),
        (data.gas.dates[0].astype("datetime64[s]"),
         (data.gas.dates[-1] + np.timedelta64(1, "D")).astype("datetime64[s]")),
    ]
    for s in data.temperatures.zones.values():
        spans.append((s.dates[0].astype("datetime64[s]"),
                      (s.dates[-1] + np.timedelta64(1, "D")).astype("datetime64[s]")))
    lo = max(a for a, _ in spans)
    hi = min(b for _, b in spans)
    first = int(str(lo)[:4]) - 1
    last = int(str(hi)[:4])
    out = []
    for y in range(first, last + 1):
        start, end, _ = season_window(y)
        if start >= lo and end <= hi:
            out.append(y)
    return out


def prepare(cfg, data):
    seasons = covered_seasons(data)
    if not seasons:
        e = data.electricity.timestamps
        raise DataCoverageError(
            f"no complete peak season (first Sunday of November + 140 days) "
            f"inside data spanning {e[0]} to {e[-1]}"
        )
    e = demand.detrend_and_rescale(data.electricity, cfg.target_peak)
    g = demand.spread_daily_to_hourly(data.gas)
    temp = weather.composite_temperature(data.temperatures)
    ts = []
    for y in seasons:
        start, end, _ = season_window(y)
        ts.append(e.select(start, end).timestamps)
    ts = np.concatenate(ts)
    common = np.intersect1d(ts, g.timestamps, assume_unique=True)
    common = np.intersect1d(common, data.wind.timestamps, assume_unique=True)
    days = np.unique(common.astype("datetime64[D]"))
    days = np.intersect1d(days, temp.dates, assume_unique=True)
    common = common[np.isin(common.astype("datetime64[D]"), days)]
    if common.size == 0:
        raise DataCoverageError("input series share no hours inside the peak seasons")
    wpos = np.searchsorted(data.wind.timestamps, common)
    wind = generation.WindSeries(
        common, data.wind.onshore[wpos], data.wind.offshore[wpos]
    )
    tsel = temp.values[np.searchsorted(temp.dates, days)]
    return PreparedData(
        seasons=tuple(seasons),
        electricity=e.reindex(common),
        gas_hourly=g.reindex(common),
        wind=wind,
        temperature=weather.DailySeries(days, tsel),
    )


def demand_distribution(cfg, d_hourly, fit, temperature):
    if cfg.demand_mode == "empirical":
        return probdist.from_samples(d_hourly.values, cfg.grid_step)
    return probdist.from_samples(fit.predict(temperature.values), cfg.grid_step)


@dataclass(frozen=True)
class RowResult:
    """One evaluated combination with its distributions for optional dumps."""

    report: adequacy.AdequacyReport
    margin: probdist.CapacityDistribution
    peak: probdist.CapacityDistribution
    generation: probdist.CapacityDistribution


def evaluate(cfg, data, models=None, param_sets=None):
    """Evaluate every (year, model, param_set); ordered by year, model, param set."""
    models = [HeatModel.parse(m) for m in (models or cfg.models)]
    names = list(param_sets or cfg.param_sets)
    for n in names:
        if n not in cfg.param_sets:
            raise ConfigError(f"unknown parameter set {n!r}")
    prep = prepare(cfg, data)
    results = []
    for year in cfg.years:
        quotas = cfg.capacities[year]
        fleet = synthesize_fleet(data.unit_pool, quotas, cfg.rng_seed, year)
        copt = generation.build_copt(fleet, cfg.grid_step)
        y = generation.wind_output_series(prep.wind, fleet.c_on, fleet.c_off)
        gen = generation.total_generation_distribution(copt, y, cfg.grid_step)
        for model in models:
            for name in names:
                p = HeatParams(**cfg.param_sets[name], model=model,
                               years_of_growth=year - cfg.base_year)
                h = demand.heat_series(p, prep.electricity, prep.gas_hourly)
                d = demand.effective_demand_series(prep.electricity, h, p.reserve_r)
                fit = weather.fit_temperature_regression(
                    weather.daily_demand(d, cfg.daily_statistic), prep.temperature
                )
                dd = demand_distribution(cfg, d, fit, prep.temperature)
                z = adequacy.margin_distribution(gen, dd)
                peak = adequacy.peak_distribution(dd, cfg.n_periods)
                q95, iqr = adequacy.peak_summary(peak)
                report = adequacy.AdequacyReport(
                    year=year,
                    model=model.value,
                    param_set=name,
                    lole=adequacy.lole(z, cfg.n_periods),
                    eeu=adequacy.eeu(z, cfg.n_periods),
                    peak_q95=q95,
                    peak_iqr=iqr,
                    regression=fit,
                    n_periods=cfg.n_periods,
                    seed=cfg.rng_seed,
                )
                results.append(RowResult(report, z, peak, gen))
    return results


def run_scenario(cfg, data, models=None, param_sets=None):
    """Adequacy reports for every (year, model, param_set) combination."""
    return [r.report for r in evaluate(cfg, data, models, param_sets)]


def q95_growth_rate(reports, model, param_set):
    """Least-squares slope of the 1-in-20 peak against year, in MW/yr."""
    rows = sorted((r for r in reports if r.model == model and r.param_set == param_set),
                  key=lambda r: r.year)
    if len(rows) < 2:
        raise InvalidValue("need at least two years to estimate a growth rate")
    yrs = np.array([r.year for r in rows], dtype=float)
    q = np.array([r.peak_q95 for r in rows])
    return float(np.polyfit(yrs, q, 1)[0])
