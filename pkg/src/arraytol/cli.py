"""Command-line front end: config ingestion, pipeline orchestration, CSV/JSON output.

All numeric output uses round-trip decimal formatting; `-inf` is the only
non-numeric token.  Identical config and seed produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, ValidationError
from .iams import interval_af_curve, power_bounds, power_db
from .model import ArrayScenario, load_config, scenario_from_config, uniform_grid
from .montecarlo import run_mc
from .pia import feature_report, probability_map
from .validate import format_results, run_validation


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved run parameters (config file merged with flag overrides)."""

    scenario: ArrayScenario
    k_regions: int
    n_u: int
    arc_points: int
    probe_directions: tuple[float, ...] = ()
    mc_samples: int = 100_000
    seed: int = 0
    out_dir: str = "."
    threads: int = 1
    dump_polygons: bool = False


def _fmt(x) -> str:
    v = float(x)
    if math.isinf(v):
        return "-inf" if v < 0 else "inf"
    return repr(v)


def _json_safe(obj):
    if isinstance(obj, float):
        if math.isinf(obj):
            return "-inf" if obj < 0 else "inf"
        return obj
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def build_run_config(args: argparse.Namespace) -> RunConfig:
    cfg = load_config(args.config)
    scenario = scenario_from_config(cfg)

    def resolved(flag_value, key, default=None, required=False):
        if flag_value is not None:
            return flag_value
        if key in cfg:
            value = cfg[key]
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ConfigError(f"config field '{key}' must be a number")
            return value
        if required:
            raise ConfigError(f"config is missing required field '{key}'")
        return default

    k_regions = int(resolved(args.k, "k_regions", required=True))
    n_u = int(resolved(args.nu, "n_u", required=True))
    arc_points = int(resolved(args.arc_points, "arc_points", required=True))
    mc_samples = int(resolved(args.mc_samples, "mc_samples", default=100_000))
    seed = int(resolved(args.seed, "seed", default=0))
    for name, value, minimum in (
        ("k_regions", k_regions, 1),
        ("n_u", n_u, 2),
        ("arc_points", arc_points, 2),
        ("mc_samples", mc_samples, 1),
        ("threads", args.threads, 1),
    ):
        if value < minimum:
            raise ConfigError(f"'{name}' must be at least {minimum}, got {value}")
    probes = tuple(args.probe or ())
    for u in probes:
        if not (-1.0 <= u <= 1.0):
            raise ConfigError(f"probe direction {u} must lie in [-1, 1]")
    return RunConfig(
        scenario=scenario,
        k_regions=k_regions,
        n_u=n_u,
        arc_points=arc_points,
        probe_directions=probes,
        mc_samples=mc_samples,
        seed=seed,
        out_dir=args.out,
        threads=args.threads,
        dump_polygons=getattr(args, "dump_polygons", False),
    )


def _out_path(run: RunConfig, name: str) -> str:
    os.makedirs(run.out_dir, exist_ok=True)
    return os.path.join(run.out_dir, name)


def cmd_bounds(run: RunConfig) -> int:
    grid = uniform_grid(run.n_u)
    intervals = interval_af_curve(run.scenario, grid, run.arc_points, run.threads)
    curve = power_bounds(run.scenario, grid, run.arc_points, run.threads, intervals=intervals)
    with open(_out_path(run, "bounds.csv"), "w", encoding="utf-8") as fh:
        fh.write("u,p_lo_db,p_hi_db,nominal_db,modulus_lo,modulus_hi,n_vertices\n")
        for i, u in enumerate(grid.samples):
            fh.write(
                f"{_fmt(u)},{_fmt(curve.p_lo_db[i])},{_fmt(curve.p_hi_db[i])},"
                f"{_fmt(curve.nominal_db[i])},{_fmt(curve.modulus_lo[i])},"
                f"{_fmt(curve.modulus_hi[i])},{int(curve.n_vertices[i])}\n"
            )
    if run.dump_polygons:
        with open(_out_path(run, "polygons.csv"), "w", encoding="utf-8") as fh:
            fh.write("u,vertex,re,im\n")
            for iv in intervals:
                for j, v in enumerate(iv.region.vertices):
                    fh.write(f"{_fmt(iv.u)},{j},{_fmt(v.real)},{_fmt(v.imag)}\n")
    return 0


def cmd_pia(run: RunConfig) -> int:
    grid = uniform_grid(run.n_u)
    pmap = probability_map(run.scenario, grid, run.k_regions, run.arc_points, run.threads)
    with open(_out_path(run, "pia.csv"), "w", encoding="utf-8") as fh:
        fh.write("u,k,p_lo_db(k),p_hi_db(k),p_k\n")
        for i, u in enumerate(grid.samples):
            for k in range(run.k_regions):
                fh.write(
                    f"{_fmt(u)},{k + 1},{_fmt(pmap.region_power_db[i, k])},"
                    f"{_fmt(pmap.region_power_db[i, k + 1])},{_fmt(pmap.p[k, i])}\n"
                )
    return 0


def cmd_features(run: RunConfig) -> int:
    grid = uniform_grid(run.n_u)
    report = feature_report(run.scenario, grid, run.k_regions, run.arc_points, run.threads)
    payload = {
        "k_regions": report.k_regions,
        "u_max": report.u_max,
        "mainlobe_span": list(report.mainlobe_span),
        "degenerate": report.degenerate,
        "regions": [
            {
                "k": k + 1,
                "sll_db": [float(report.sll_intervals[k, 0]), float(report.sll_intervals[k, 1])],
                "sll_prob": float(report.sll_probs[k]),
                "gamma_db": [
                    float(report.gamma_intervals[k, 0]),
                    float(report.gamma_intervals[k, 1]),
                ],
                "gamma_prob": float(report.gamma_probs[k]),
                "mean_prob": float(report.mean_probs[k]),
            }
            for k in range(report.k_regions)
        ],
        "iams": {
            "sll_db": list(report.iams_sll),
            "gamma_db": list(report.iams_gamma),
        },
    }
    with open(_out_path(run, "features.json"), "w", encoding="utf-8") as fh:
        json.dump(_json_safe(payload), fh, indent=2)
        fh.write("\n")
    return 0


def cmd_mc(run: RunConfig) -> int:
    grid = uniform_grid(run.n_u)
    intervals = interval_af_curve(run.scenario, grid, run.arc_points, run.threads)
    curve = power_bounds(run.scenario, grid, run.arc_points, run.threads, intervals=intervals)
    pmap = probability_map(
        run.scenario, grid, run.k_regions, run.arc_points, run.threads, intervals=intervals
    )
    report = run_mc(
        run.scenario,
        grid,
        run.k_regions,
        run.mc_samples,
        seed=run.seed,
        arc_points=run.arc_points,
        threads=run.threads,
        probe_directions=run.probe_directions,
        pmap=pmap,
    )
    mc_min_db = power_db(report.per_u_min, pmap.peak_power)
    mc_max_db = power_db(report.per_u_max, pmap.peak_power)
    with open(_out_path(run, "mc_envelope.csv"), "w", encoding="utf-8") as fh:
        fh.write("u,mc_min_db,mc_max_db,p_lo_db,p_hi_db\n")
        for i, u in enumerate(grid.samples):
            fh.write(
                f"{_fmt(u)},{_fmt(mc_min_db[i])},{_fmt(mc_max_db[i])},"
                f"{_fmt(curve.p_lo_db[i])},{_fmt(curve.p_hi_db[i])}\n"
            )
    with open(_out_path(run, "mc_frequencies.csv"), "w", encoding="utf-8") as fh:
        fh.write("u,k,mc_freq,pia_p\n")
        for i, u in enumerate(grid.samples):
            for k in range(run.k_regions):
                fh.write(
                    f"{_fmt(u)},{k + 1},{_fmt(report.region_frequencies[k, i])},"
                    f"{_fmt(pmap.p[k, i])}\n"
                )
    for hist in report.histograms:
        idx = int(np.argmin(np.abs(grid.samples - hist.u)))
        with open(_out_path(run, f"mc_hist_{idx:04d}.csv"), "w", encoding="utf-8") as fh:
            fh.write("bin_lo_db,bin_hi_db,count\n")
            for b in range(hist.counts.size):
                fh.write(
                    f"{_fmt(hist.bin_edges_db[b])},{_fmt(hist.bin_edges_db[b + 1])},"
                    f"{int(hist.counts[b])}\n"
                )
    return 0


def cmd_validate(run: RunConfig) -> int:
    grid = uniform_grid(run.n_u)
    results = run_validation(
        run.scenario,
        grid,
        run.k_regions,
        run.arc_points,
        run.mc_samples,
        run.seed,
        run.threads,
    )
    print(format_results(results))
    return 0 if all(r.passed for r in results) else 1


_COMMANDS = {
    "bounds": cmd_bounds,
    "pia": cmd_pia,
    "features": cmd_features,
    "mc": cmd_mc,
    "validate": cmd_validate,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arraytol",
        description="Power-pattern tolerance bounds and within-bounds probabilities "
        "for linear phased arrays.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="JSON scenario/config file")
    common.add_argument("--k", type=int, default=None, help="number of probability rings")
    common.add_argument("--nu", type=int, default=None, help="number of angular samples")
    common.add_argument("--arc-points", type=int, default=None, dest="arc_points",
                        help="outer-arc vertices per excitation sector")
    common.add_argument("--mc-samples", type=int, default=None, dest="mc_samples",
                        help="Monte Carlo sample count")
    common.add_argument("--seed", type=int, default=None, help="Monte Carlo seed")
    common.add_argument("--probe", type=float, action="append", default=None,
                        help="probe direction u for histograms (repeatable)")
    common.add_argument("--out", default=".", help="output directory")
    common.add_argument("--threads", type=int, default=1, help="worker pool size")
    sub = parser.add_subparsers(dest="command", required=True)
    bounds_p = sub.add_parser("bounds", parents=[common],
                              help="write the power-pattern bounds CSV")
    bounds_p.add_argument("--dump-polygons", action="store_true",
                          help="also dump region polygons as a CSV vertex list")
    sub.add_parser("pia", parents=[common], help="write the ring-probability CSV")
    sub.add_parser("features", parents=[common], help="write the feature-report JSON")
    sub.add_parser("mc", parents=[common], help="write the Monte Carlo comparison CSVs")
    sub.add_parser("validate", parents=[common], help="run the invariant suite")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        run = build_run_config(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        return _COMMANDS[args.command](run)
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
