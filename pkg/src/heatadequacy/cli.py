"""Command-line interface: ``validate``, ``synth`` and ``run``.

Exit codes: 0 success, 1 data error, 2 config error, 3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import ingest, scenario, synthetic
from .errors import (
    AdequacyError,
    AlignmentError,
    ConfigError,
    DataCoverageError,
    InvalidParams,
    MissingTechnology,
    SchemaError,
)

log = logging.getLogger(__name__)

EXIT_OK, EXIT_DATA, EXIT_CONFIG, EXIT_INVARIANT = 0, 1, 2, 3

REPORT_FIELDS = (
    "year", "model", "param_set", "lole_hrs_yr", "eeu_mwh_yr", "peak_q95_mw",
    "peak_iqr_mw", "k_t_mw_per_c", "d0_mw", "se_kt", "r_squared", "n_periods", "seed",
)


class InvariantError(AdequacyError):
    """A computed result breaks a property that must always hold."""


def report_row(r):
    f = r.regression
    return {
        "year": r.year,
        "model": r.model,
        "param_set": r.param_set,
        "lole_hrs_yr": r.lole,
        "eeu_mwh_yr": r.eeu,
        "peak_q95_mw": r.peak_q95,
        "peak_iqr_mw": r.peak_iqr,
        "k_t_mw_per_c": f.k_t,
        "d0_mw": f.d0,
        "se_kt": f.se_kt,
        "r_squared": f.r_squared,
        "n_periods": r.n_periods,
        "seed": r.seed,
    }


def _cell(v):
    return repr(float(v)) if isinstance(v, (float, np.floating)) else str(v)


def write_report(rows, out_dir):
    out = Path(out_dir)
    with (out / "report.csv").open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(REPORT_FIELDS)
        for row in rows:
            w.writerow([_cell(row[k]) for k in REPORT_FIELDS])
    doc = {"fields": list(REPORT_FIELDS), "rows": rows}
    (out / "report.json").write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def _write_points(path, header, x, y):
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows((repr(float(a)), repr(float(b))) for a, b in zip(x, y))


def write_distributions(results, out_dir):
    """Margin PMF, peak survival function and generation CDF per report row."""
    folder = Path(out_dir) / "distributions"
    folder.mkdir(parents=True, exist_ok=True)
    for res in results:
        r = res.report
        stem = f"{r.year}_{r.model}_{r.param_set}"
        _write_points(folder / f"{stem}_margin_pmf.csv", ("margin_mw", "probability"),
                      res.margin.support, res.margin.probabilities)
        x, sf = survival_points(res.peak)
        _write_points(folder / f"{stem}_peak_sf.csv", ("peak_mw", "survival"), x, sf)
        g = res.generation
        _write_points(folder / f"{stem}_generation_cdf.csv", ("capacity_mw", "cdf"),
                      g.support, np.minimum(g.cumulative(), 1.0))


def survival_points(peak):
    x = peak.support
    sf = np.clip(1.0 - peak.cumulative(), 0.0, 1.0)
    return x, sf


def check_invariants(results):
    for res in results:
        r = res.report
        where = f"{r.year}/{r.model}/{r.param_set}"
        mass = float(res.margin.probabilities.sum())
        if abs(mass - 1.0) > 1e-6:
            raise InvariantError(f"{where}: margin mass {mass}")
        if not 0.0 <= r.lole <= r.n_periods or not r.eeu >= 0.0:
            raise InvariantError(f"{where}: LOLE {r.lole} or EEU {r.eeu} out of range")
        if not r.peak_iqr >= 0.0 or not np.isfinite(r.peak_q95):
            raise InvariantError(f"{where}: bad peak summary")
        _, sf = survival_points(res.peak)
        if np.any(np.diff(sf) > 0):
            raise InvariantError(f"{where}: peak survival function increases")


def _select(value, options, what):
    if value is None:
        return None
    if value.lower() == "all":
        return list(options)
    if value not in options:
        raise ConfigError(f"unknown {what} {value!r}; choose from {list(options)} or 'all'")
    return [value]


def build_config(args):
    cfg = scenario.ScenarioConfig.load(args.config) if args.config else scenario.default_config()
    changes = {}
    if args.demand_mode is not None:
        changes["demand_mode"] = args.demand_mode
    if args.grid_step is not None:
        changes["grid_step"] = args.grid_step
    if args.seed is not None:
        changes["rng_seed"] = args.seed
    if args.years is not None:
        changes["horizon_years"] = args.years
    if args.models is not None:
        m = args.models.upper()
        changes["models"] = ["M0", "M1", "M2"] if m == "ALL" else [m]
    if changes:
        raw = cfg.to_dict()
        raw.update(changes)
        cfg = scenario.ScenarioConfig.from_dict(raw)
    return cfg


def cmd_run(args):
    cfg = build_config(args)
    if args.param_set is None:
        names = ["medium"] if "medium" in cfg.param_sets else [next(iter(cfg.param_sets))]
    else:
        names = _select(args.param_set, cfg.param_sets, "parameter set")
    data = ingest.load_dataset(args.data_dir)
    for g in data.gaps:
        log.warning("%s gap of %d h from %s left unfilled", g.series, g.missing_hours, g.start)
    results = scenario.evaluate(cfg, data, param_sets=names)
    check_invariants(results)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_report([report_row(r.report) for r in results], out)
    if args.dump_distributions:
        write_distributions(results, out)
    print(f"wrote {len(results)} rows to {out / 'report.csv'}")
    return EXIT_OK


def cmd_validate(args):
    paths = {k: getattr(args, k) for k in ingest.FILES if getattr(args, k, None)}
    if args.data_dir is None and len(paths) < len(ingest.FILES):
        raise ConfigError("give --data-dir or every individual file path")
    try:
        data = ingest.load_dataset(args.data_dir, **paths)
    except ingest.DatasetInvalid as exc:
        for p in exc.problems:
            print(f"error: {p}", file=sys.stderr)
        return EXIT_DATA
    seasons = scenario.covered_seasons(data)
    for g in data.gaps:
        print(f"warning: {g.series} gap of {g.missing_hours} h from {g.start} to {g.end}",
              file=sys.stderr)
    print(f"ok: {len(data.electricity)} hourly records, seasons {seasons[0]}-{seasons[-1]}")
    return EXIT_OK


def cmd_synth(args):
    p = synthetic.SynthParams(n_winters=args.n_winters, start_year=args.start_year,
                              seed=args.seed)
    data = synthetic.generate_synthetic(p)
    ingest.write_dataset(data, args.out)
    print(f"wrote synthetic dataset (seed {args.seed}) to {args.out}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="heatadequacy",
        description="Generation adequacy under electrified heat demand.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check the input CSV files")
    v.add_argument("--data-dir", type=Path)
    for key, (fname, _) in ingest.FILES.items():
        v.add_argument(f"--{key.replace('_', '-')}", dest=key, type=Path,
                       help=f"path to {fname} (overrides --data-dir)")
    v.set_defaults(func=cmd_validate)

    s = sub.add_parser("synth", help="write a synthetic dataset")
    s.add_argument("--out", type=Path, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--n-winters", type=int, default=synthetic.SynthParams.n_winters)
    s.add_argument("--start-year", type=int, default=synthetic.SynthParams.start_year)
    s.set_defaults(func=cmd_synth)

    r = sub.add_parser("run", help="evaluate a scenario and write the report")
    r.add_argument("--config", type=Path, help="JSON scenario file (default: built-in)")
    r.add_argument("--data-dir", type=Path, required=True)
    r.add_argument("--out", type=Path, required=True, help="output directory")
    r.add_argument("--models", help="m0, m1, m2 or all (default: config models)")
    r.add_argument("--param-set", help="parameter set name or all (default: medium)")
    r.add_argument("--demand-mode", choices=["empirical", "temperature"])
    r.add_argument("--grid-step", type=float)
    r.add_argument("--seed", type=int)
    r.add_argument("--years", type=int, help="growth years after the base year")
    r.add_argument("--dump-distributions", action="store_true")
    r.set_defaults(func=cmd_run)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ConfigError, InvalidParams, MissingTechnology) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (SchemaError, DataCoverageError, AlignmentError, OSError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except InvariantError as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except AdequacyError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
