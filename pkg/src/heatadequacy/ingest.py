"""Readers and writers for the input CSV files.

All files are comma separated with a mandatory header row:

================  =============================================
electricity.csv   ``timestamp,demand_mw``
gas_ndm.csv       ``date,energy_gwh``
wind_cf.csv       ``timestamp,cf_onshore,cf_offshore``
temperature.csv   ``date,zone_id,tmin_c``
zones.csv         ``zone_id,peak_demand_mw``
unit_pool.csv     ``unit_id,technology,capacity_mw,availability``
================  =============================================

Timestamps are ISO-8601 UTC hours (``2018-11-04T17:00:00Z``), dates are
``YYYY-MM-DD``. Hourly gaps of up to three missing hours are filled by linear
interpolation on load; longer gaps are left out and listed in
:attr:`Dataset.gaps`.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DataCoverageError, SchemaError
from .generation import GeneratingUnit, WindSeries
from .scenario import UnitPool, season_window
from .series import HOUR, DailySeries, HourlySeries
from .weather import ZonalTemperatures

MAX_FILL_HOURS = 3

FILES = {
    "electricity": ("electricity.csv", ("timestamp", "demand_mw")),
    "gas": ("gas_ndm.csv", ("date", "energy_gwh")),
    "wind": ("wind_cf.csv", ("timestamp", "cf_onshore", "cf_offshore")),
    "temperature": ("temperature.csv", ("date", "zone_id", "tmin_c")),
    "zones": ("zones.csv", ("zone_id", "peak_demand_mw")),
    "unit_pool": ("unit_pool.csv", ("unit_id", "technology", "capacity_mw", "availability")),
}


class DatasetInvalid(SchemaError):
    """Several schema violations, one :class:`SchemaError` each."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(str(p) for p in self.problems))


@dataclass(frozen=True)
class Gap:
    series: str
    start: np.datetime64
    end: np.datetime64
    missing_hours: int

    def __str__(self):
        return f"{self.series}: {self.missing_hours} h missing from {self.start} to {self.end}"


@dataclass(frozen=True, eq=False)
class Dataset:
    electricity: HourlySeries
    gas: DailySeries
    wind: WindSeries
    temperatures: ZonalTemperatures
    unit_pool: UnitPool
    gaps: tuple = field(default=())


def parse_timestamp(text):
    s = text.strip()
    if s.endswith("Z"):
        s = s[:-1]
    elif s.endswith("+00:00"):
        s = s[:-6]
    s = s.replace(" ", "T")
    if "+" in s[10:] or s[10:].count("-"):
        raise ValueError(f"timestamp {text!r} is not UTC")
    t = np.datetime64(s, "s")
    if t.astype(np.int64) % 3600:
        raise ValueError(f"timestamp {text!r} is not on a whole hour")
    return t


def parse_date(text):
    s = text.strip()
    if len(s) != 10:
        raise ValueError(f"date {text!r} is not YYYY-MM-DD")
    return np.datetime64(s, "D")


def format_timestamp(ts):
    return f"{np.datetime_as_string(np.datetime64(ts, 's'))}Z"


def _float(text):
    v = float(text)
    if not math.isfinite(v):
        raise ValueError(f"{text!r} is not finite")
    return v


class _Reader:
    """Row iterator that records violations instead of stopping at the first."""

    def __init__(self, path, columns):
        self.path = Path(path)
        self.columns = columns
        self.problems = []

    def rows(self):
        if not self.path.is_file():
            self.problems.append(SchemaError("file not found", self.path))
            return
        with self.path.open(newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None or tuple(h.strip() for h in header) != self.columns:
                self.problems.append(
                    SchemaError(f"header must be {','.join(self.columns)}, got {header}",
                                self.path, 1)
                )
                return
            for row in reader:
                if not row or all(not c.strip() for c in row):
                    continue
                line = reader.line_num
                if len(row) != len(self.columns):
                    self.problems.append(
                        SchemaError(f"expected {len(self.columns)} fields, got {len(row)}",
                                    self.path, line)
                    )
                    continue
                yield line, dict(zip(self.columns, (c.strip() for c in row)))

    def field(self, line, row, column, parse, check=None, message=None):
        try:
            v = parse(row[column])
        except ValueError as exc:
            self.problems.append(SchemaError(str(exc), self.path, line, column))
            return None
        if check is not None and not check(v):
            self.problems.append(SchemaError(message.format(v), self.path, line, column))
            return None
        return v


def _check_order(reader, keys, lines, what):
    for i in range(1, len(keys)):
        if keys[i] <= keys[i - 1]:
            reader.problems.append(
                SchemaError(f"{what} not strictly increasing ({keys[i]} after {keys[i - 1]})",
                            reader.path, lines[i])
            )
            return False
    return True


def fill_short_gaps(timestamps, columns, name, max_fill=MAX_FILL_HOURS):
    """Interpolate runs of at most ``max_fill`` missing hours.

    Returns the new timestamps, the filled columns and the long gaps left out.
    """
    ts = np.asarray(timestamps, dtype="datetime64[s]")
    columns = [np.asarray(c, dtype=float) for c in columns]
    if ts.size < 2:
        return ts, columns, []
    missing = (np.diff(ts) // HOUR).astype(np.int64) - 1
    gaps = []
    new_ts, new_cols = [], [[] for _ in columns]
    prev = 0
    for i in np.flatnonzero(missing > 0):
        m = int(missing[i])
        new_ts.append(ts[prev : i + 1])
        for c, out in zip(columns, new_cols):
            out.append(c[prev : i + 1])
        if m <= max_fill:
            new_ts.append(ts[i] + np.arange(1, m + 1) * HOUR)
            frac = np.arange(1, m + 1) / (m + 1)
            for c, out in zip(columns, new_cols):
                out.append(c[i] + frac * (c[i + 1] - c[i]))
        else:
            gaps.append(Gap(name, ts[i] + HOUR, ts[i + 1], m))
        prev = i + 1
    new_ts.append(ts[prev:])
    for c, out in zip(columns, new_cols):
        out.append(c[prev:])
    return np.concatenate(new_ts), [np.concatenate(o) for o in new_cols], gaps


def read_electricity(path):
    r = _Reader(path, FILES["electricity"][1])
    ts, vals, lines = [], [], []
    for line, row in r.rows():
        t = r.field(line, row, "timestamp", parse_timestamp)
        v = r.field(line, row, "demand_mw", _float)
        if t is not None and v is not None:
            ts.append(t), vals.append(v), lines.append(line)
    _check_order(r, ts, lines, "timestamps")
    return r, ts, vals


def read_gas(path):
    r = _Reader(path, FILES["gas"][1])
    ds, vals, lines = [], [], []
    for line, row in r.rows():
        d = r.field(line, row, "date", parse_date)
        v = r.field(line, row, "energy_gwh", _float, lambda x: x >= 0,
                    "energy must be non-negative, got {}")
        if d is not None and v is not None:
            ds.append(d), vals.append(v), lines.append(line)
    _check_order(r, ds, lines, "dates")
    return r, ds, vals


def read_wind(path):
    r = _Reader(path, FILES["wind"][1])
    ts, on, off, lines = [], [], [], []
    unit = lambda x: 0.0 <= x <= 1.0  # noqa: E731
    for line, row in r.rows():
        t = r.field(line, row, "timestamp", parse_timestamp)
        a = r.field(line, row, "cf_onshore", _float, unit, "capacity factor {} outside [0, 1]")
        b = r.field(line, row, "cf_offshore", _float, unit, "capacity factor {} outside [0, 1]")
        if t is not None and a is not None and b is not None:
            ts.append(t), on.append(a), off.append(b), lines.append(line)
    _check_order(r, ts, lines, "timestamps")
    return r, ts, on, off


def read_temperature(path):
    r = _Reader(path, FILES["temperature"][1])
    by_zone = {}
    for line, row in r.rows():
        d = r.field(line, row, "date", parse_date)
        v = r.field(line, row, "tmin_c", _float, lambda x: -90 < x < 60,
                    "implausible temperature {}")
        z = row["zone_id"]
        if not z:
            r.problems.append(SchemaError("empty zone_id", r.path, line, "zone_id"))
            continue
        if d is not None and v is not None:
            by_zone.setdefault(z, ([], [], []))
            by_zone[z][0].append(d), by_zone[z][1].append(v), by_zone[z][2].append(line)
    for z, (ds, _, lines) in by_zone.items():
        _check_order(r, ds, lines, f"dates for zone {z}")
    return r, by_zone


def read_zones(path):
    r = _Reader(path, FILES["zones"][1])
    weights = {}
    for line, row in r.rows():
        v = r.field(line, row, "peak_demand_mw", _float, lambda x: x >= 0,
                    "peak demand must be non-negative, got {}")
        z = row["zone_id"]
        if z in weights:
            r.problems.append(SchemaError(f"duplicate zone {z}", r.path, line, "zone_id"))
        elif v is not None:
            weights[z] = v
    return r, weights


def read_unit_pool(path):
    r = _Reader(path, FILES["unit_pool"][1])
    units, seen = [], set()
    for line, row in r.rows():
        cap = r.field(line, row, "capacity_mw", _float, lambda x: x > 0,
                      "capacity must be positive, got {}")
        av = r.field(line, row, "availability", _float, lambda x: 0 < x <= 1,
                     "availability {} outside (0, 1]")
        uid, tech = row["unit_id"], row["technology"]
        if not uid or not tech:
            r.problems.append(SchemaError("unit_id and technology are required", r.path, line))
            continue
        if uid in seen:
            r.problems.append(SchemaError(f"duplicate unit_id {uid}", r.path, line, "unit_id"))
            continue
        seen.add(uid)
        if cap is not None and av is not None:
            units.append(GeneratingUnit(uid, tech, cap, av))
    return r, units


def _missing_dates_in_seasons(name, dates):
    """Missing days inside any season window that overlaps the file's span."""
    d = np.asarray(dates, dtype="datetime64[D]")
    problems = []
    y0, y1 = int(str(d[0])[:4]) - 1, int(str(d[-1])[:4])
    for y in range(y0, y1 + 1):
        start, end, _ = season_window(y)
        s, e = start.astype("datetime64[D]"), end.astype("datetime64[D]")
        lo, hi = max(s, d[0]), min(e, d[-1] + np.timedelta64(1, "D"))
        if lo >= hi:
            continue
        want = np.arange(lo, hi)
        miss = np.setdiff1d(want, d)
        if miss.size:
            problems.append(f"{name}: {miss.size} missing dates in season {y}/{y + 1} "
                            f"(first {miss[0]}, last {miss[-1]})")
    return problems


def load_dataset(data_dir=None, **paths):
    """Read and validate all six input files.

    ``paths`` may override individual files by key (``electricity``, ``gas``,
    ``wind``, ``temperature``, ``zones``, ``unit_pool``); the rest are looked
    up in ``data_dir`` under their standard names.
    """
    resolved = {}
    for key, (fname, _) in FILES.items():
        if key in paths:
            resolved[key] = Path(paths[key])
        elif data_dir is not None:
            resolved[key] = Path(data_dir) / fname
        else:
            raise ValueError(f"no path for {key}")

    re_, e_ts, e_v = read_electricity(resolved["electricity"])
    rg, g_d, g_v = read_gas(resolved["gas"])
    rw, w_ts, w_on, w_off = read_wind(resolved["wind"])
    rt, by_zone = read_temperature(resolved["temperature"])
    rz, weights = read_zones(resolved["zones"])
    ru, units = read_unit_pool(resolved["unit_pool"])
    problems = [p for r in (re_, rg, rw, rt, rz, ru) for p in r.problems]
    if not problems:
        for r, items, what in ((re_, e_ts, "electricity"), (rg, g_d, "gas"), (rw, w_ts, "wind"),
                               (rt, by_zone, "temperature"), (ru, units, "unit pool")):
            if not items:
                problems.append(SchemaError(f"no {what} records", r.path))
        if set(by_zone) - set(weights):
            problems.append(SchemaError(
                f"zones without weights: {sorted(set(by_zone) - set(weights))}", rz.path))
    if problems:
        raise DatasetInvalid(problems)

    coverage = _missing_dates_in_seasons(str(resolved["gas"]), g_d)
    for z, (ds, _, _) in by_zone.items():
        coverage += _missing_dates_in_seasons(f"{resolved['temperature']} zone {z}", ds)
    if coverage:
        raise DataCoverageError("; ".join(coverage))

    gaps = []
    ts, (ev,), g = fill_short_gaps(e_ts, [np.array(e_v)], "electricity")
    gaps += g
    electricity = HourlySeries(ts, ev)
    ts, (on, off), g = fill_short_gaps(w_ts, [np.array(w_on), np.array(w_off)], "wind")
    gaps += g
    wind = WindSeries(ts, on, off)
    zones = {z: DailySeries(ds, vs) for z, (ds, vs, _) in sorted(by_zone.items())}
    temps = ZonalTemperatures(zones, {z: weights[z] for z in zones})
    data = Dataset(
        electricity=electricity,
        gas=DailySeries(g_d, g_v),
        wind=wind,
        temperatures=temps,
        unit_pool=UnitPool(tuple(units)),
        gaps=tuple(gaps),
    )
    from .scenario import covered_seasons

    if not covered_seasons(data):
        raise DataCoverageError("inputs do not jointly cover one full peak season")
    return data


def _fmt(v):
    return repr(float(v))


def write_dataset(data, out_dir):
    """Write ``data`` as the six schema files; output bytes depend only on ``data``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    def write(key, rows):
        fname, header = FILES[key]
        with (out / fname).open("w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)

    e = data.electricity
    write("electricity", ((format_timestamp(t), _fmt(v)) for t, v in zip(e.timestamps, e.values)))
    write("gas", ((str(d), _fmt(v)) for d, v in zip(data.gas.dates, data.gas.values)))
    w = data.wind
    write("wind", ((format_timestamp(t), _fmt(a), _fmt(b))
                   for t, a, b in zip(w.timestamps, w.onshore, w.offshore)))
    zones = data.temperatures.zones
    write("temperature", ((str(d), z, _fmt(v))
                          for z in zones for d, v in zip(zones[z].dates, zones[z].values)))
    write("zones", ((z, _fmt(data.temperatures.weights[z])) for z in zones))
    write("unit_pool", ((u.unit_id, u.technology, _fmt(u.capacity), _fmt(u.availability))
                        for u in data.unit_pool.units))
    return {key: out / fname for key, (fname, _) in FILES.items()}
