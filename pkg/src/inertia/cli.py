"""Command-line pipeline: validate, analyze, normality, simulate.

Configuration lives in a single JSON file (see ``default_config``) and
individual flags override it, so a run is fully captured by one artifact
plus its command line. Without ``--config`` the bundled synthetic snapshot
is analyzed. Exit codes are stable for scripting: 0 success, 1 data or
validation error, 2 configuration error.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from inertia import fixtures
from inertia.analysis import (
    annual_increments,
    break_table,
    demean_and_pool,
    increment_regression_vs_level,
    increment_regression_vs_time,
    mean_increment_table,
)
from inertia.data import (
    Dataset,
    SegmentSpec,
    load_cohort_csv,
    load_long_csv,
    load_wide_csv,
    merge_datasets,
    slice_segment,
    write_long_csv,
)
from inertia.errors import ConfigError, InertiaError
from inertia.model import ModelParams, SimConfig, run_recovery, simulate_series
from inertia.report import TableDoc, emit_table, render_histogram, render_scatter
from inertia.stats import histogram, shapiro_francia

PROG = "inertia"


def default_config():
    """Configuration for the bundled snapshot with the standard windows."""
    return {
        "pre": {"path": str(fixtures.fixture_path(fixtures.PRE_WIDE)),
                "format": "wide", "basis": fixtures.PRE_BASIS},
        "post": {"path": str(fixtures.fixture_path(fixtures.POST_LONG)),
                 "format": "long", "basis": fixtures.POST_BASIS},
        "countries": None,
        "segments": {
            "pre_levels": [1870, 1940], "pre_increments": [1871, 1940],
            "post_levels": [1950, 2011], "post_increments": [1951, 2011],
        },
        "bin_width": 200.0,
        "trim_threshold": 800.0,
        "round": None,
        "level_timing": "previous",
        "out_dir": None,
        "simulate": {
            "A": 300.0, "C": 3000.0, "t0": 1950, "cohort_factor": 0.5,
            "years": 61, "noise_sigma": 0.0, "seed": 0, "linearize": False,
            "cohort_path": None,
            "recover": {"trials": 1000, "alpha": 0.05},
        },
    }


@dataclass
class RunConfig:
    """Resolved configuration after merging file, flags, and environment."""

    raw: dict
    out_dir: Path
    round_digits: object
    bin_width: float
    trim_threshold: float
    level_timing: str
    pre_seg: SegmentSpec
    post_seg: SegmentSpec

    @property
    def countries(self):
        return self.raw.get("countries")


def _merge(base, override):
    for key, value in override.items():
        if (key in base and isinstance(base[key], dict)
                and isinstance(value, dict)):
            _merge(base[key], value)
        else:
            base[key] = value
    return base


def load_config(args):
    """Build a RunConfig from the optional JSON file plus flag overrides."""
    cfg = default_config()
    if args.config:
        path = Path(args.config)
        if not path.is_file():
            raise ConfigError(f"config file not found: {path}")
        try:
            user = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from None
        if not isinstance(user, dict):
            raise ConfigError("config must be a JSON object")
        _merge(cfg, user)
    if getattr(args, "bin_width", None) is not None:
        cfg["bin_width"] = args.bin_width
    if getattr(args, "trim", None) is not None:
        cfg["trim_threshold"] = args.trim
    if getattr(args, "round", None) is not None:
        cfg["round"] = args.round
    if getattr(args, "level_timing", None) is not None:
        cfg["level_timing"] = args.level_timing
    if getattr(args, "seed", None) is not None:
        cfg["simulate"]["seed"] = args.seed
    if getattr(args, "linearize", False):
        cfg["simulate"]["linearize"] = True

    out_dir = (getattr(args, "out", None) or cfg.get("out_dir")
               or os.environ.get("INERTIA_OUT") or "out")
    if cfg["bin_width"] is None or cfg["bin_width"] <= 0:
        raise ConfigError("bin_width must be positive")
    if cfg["trim_threshold"] is None or cfg["trim_threshold"] <= 0:
        raise ConfigError("trim_threshold must be positive")
    if cfg["round"] is not None and (not isinstance(cfg["round"], int)
                                     or cfg["round"] < 0):
        raise ConfigError("round must be a non-negative integer")
    if cfg["level_timing"] not in ("previous", "current"):
        raise ConfigError("level_timing must be 'previous' or 'current'")
    seg = cfg["segments"]
    try:
        pre_seg = SegmentSpec("PRE", tuple(seg["pre_levels"]),
                              tuple(seg["pre_increments"]))
        post_seg = SegmentSpec("POST", tuple(seg["post_levels"]),
                               tuple(seg["post_increments"]))
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(f"bad segments: {exc}") from None
    return RunConfig(raw=cfg, out_dir=Path(out_dir),
                     round_digits=cfg["round"], bin_width=cfg["bin_width"],
                     trim_threshold=cfg["trim_threshold"],
                     level_timing=cfg["level_timing"],
                     pre_seg=pre_seg, post_seg=post_seg)


def _load_era(spec, what):
    path = spec.get("path")
    fmt = spec.get("format", "long")
    basis = spec.get("basis", "")
    if not path:
        raise ConfigError(f"{what}: no data path configured")
    if fmt == "long":
        return load_long_csv(path, basis)
    if fmt == "wide":
        return load_wide_csv(path, basis)
    raise ConfigError(f"{what}: unknown format {fmt!r}")


def load_panel(cfg):
    """Load both eras, merge them per country, and apply the country list.

    Countries present in only one file are kept (per-segment commands can
    still use them); commands spanning the break require both segments and
    will report the first country that falls short.
    """
    pre_ds = _load_era(cfg.raw["pre"], "pre")
    post_ds = _load_era(cfg.raw["post"], "post")
    if cfg.raw["pre"].get("basis") != cfg.raw["post"].get("basis"):
        raise ConfigError("pre and post files use different currency bases; "
                          "cross-break analysis needs a single basis")
    ds = merge_datasets(pre_ds, post_ds)
    if cfg.countries:
        ds = ds.restrict([c.upper() for c in cfg.countries])
    return ds


def _emit_both(doc, out_dir, round_digits):
    paths = [emit_table(doc, "csv", out_dir / f"{doc.name}.csv", round_digits),
             emit_table(doc, "json", out_dir / f"{doc.name}.json", round_digits)]
    return paths


def _fit_row(country_code, segment_label, fit):
    return [country_code, segment_label, fit.slope, fit.slope_se, fit.t_stat,
            fit.p_value, fit.n, int(fit.degenerate)]


def cmd_validate(cfg, out):
    ds = load_panel(cfg)
    failures = 0
    for code in ds.countries():
        series = ds.get(code)
        notes = []
        for seg in (cfg.pre_seg, cfg.post_seg):
            try:
                sliced = slice_segment(series, seg)
            except InertiaError as exc:
                notes.append(f"{seg.label}: {type(exc).__name__}: {exc}")
                failures += 1
            else:
                notes.append(f"{seg.label}: {len(sliced)} levels")
        print(f"{code}: " + "; ".join(notes), file=out)
    print(f"{len(ds)} countries loaded, "
          f"{failures} segment failure(s)", file=out)
    return 1 if failures else 0


def cmd_analyze(cfg, out):
    ds = load_panel(cfg)
    out_dir = cfg.out_dir
    written = []

    rows1 = []
    for row in break_table(ds, pre=cfg.pre_seg, post=cfg.post_seg):
        rows1.append([row.country.code, row.post_slope, row.post_se,
                      row.pre_slope, row.pre_se, row.ratio])
    written += _emit_both(
        TableDoc("table1_breaks",
                 ("country", "post_slope", "post_se", "pre_slope", "pre_se",
                  "ratio"), tuple(map(tuple, rows1))),
        out_dir, cfg.round_digits)

    rows2 = []
    for row in mean_increment_table(ds, pre=cfg.pre_seg, post=cfg.post_seg):
        rows2.append([row.country.code, row.pre.mean, row.pre.std_dev,
                      row.post.mean, row.post.std_dev, row.mean_ratio])
    written += _emit_both(
        TableDoc("table2_mean_increments",
                 ("country", "pre_mean", "pre_std", "post_mean", "post_std",
                  "mean_ratio"), tuple(map(tuple, rows2))),
        out_dir, cfg.round_digits)

    rows3 = []
    rows4 = []
    fig_dir = out_dir / "figures"
    for code in ds.countries():
        series = ds.get(code)
        for seg in (cfg.pre_seg, cfg.post_seg):
            inc = annual_increments(series, seg)
            fit_level = increment_regression_vs_level(
                inc, level_timing=cfg.level_timing)
            fit_time = increment_regression_vs_time(inc)
            rows3.append(_fit_row(code, seg.label, fit_level))
            rows4.append(_fit_row(code, seg.label, fit_time))
            if seg.label == "POST":
                xs = (inc.prior_levels if cfg.level_timing == "previous"
                      else inc.levels)
                written.append(render_scatter(
                    list(zip(xs, inc.increments)),
                    fig_dir / f"{code.lower()}_post_increment_vs_level.svg",
                    fit=fit_level,
                    title=f"{code}: annual increment vs level, "
                          f"{seg.level_years[0]}-{seg.level_years[1]}",
                    x_label="real GDP per capita ($)",
                    y_label="annual increment ($)"))
            else:
                written.append(render_scatter(
                    list(zip(inc.years, inc.increments)),
                    fig_dir / f"{code.lower()}_pre_increment_vs_time.svg",
                    fit=fit_time,
                    title=f"{code}: annual increment vs time, "
                          f"{seg.level_years[0]}-{seg.level_years[1]}",
                    x_label="year",
                    y_label="annual increment ($)"))
    cols = ("country", "segment", "slope", "se", "t_stat", "p_value", "n",
            "degenerate")
    written += _emit_both(
        TableDoc("table3_increment_vs_level", cols, tuple(map(tuple, rows3))),
        out_dir, cfg.round_digits)
    written += _emit_both(
        TableDoc("table4_increment_vs_time", cols, tuple(map(tuple, rows4))),
        out_dir, cfg.round_digits)

    for path in written:
        print(path, file=out)
    return 0


def cmd_normality(cfg, segment_label, out):
    ds = load_panel(cfg)
    seg = cfg.pre_seg if segment_label == "PRE" else cfg.post_seg
    pooled = demean_and_pool(ds, seg)
    trimmed = demean_and_pool(ds, seg, trim_threshold=cfg.trim_threshold)
    sf_before = shapiro_francia(pooled.values)
    sf_after = shapiro_francia(trimmed.values)

    raw = []
    for code in ds.countries():
        raw.extend(annual_increments(ds.get(code), seg).increments)
    hist_raw = histogram(raw, cfg.bin_width)
    hist_demeaned = histogram(pooled.values, cfg.bin_width)

    report = {
        "segment": seg.label,
        "increment_years": list(seg.increment_years),
        "countries": ds.countries(),
        "n_pooled": len(pooled),
        "trim_threshold": cfg.trim_threshold,
        "n_trimmed": trimmed.n_trimmed,
        "n_after_trim": len(trimmed),
        "w_before": sf_before.w_stat,
        "p_before": sf_before.p_value,
        "w_after": sf_after.w_stat,
        "p_after": sf_after.p_value,
        "bin_width": cfg.bin_width,
    }
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    report_path = cfg.out_dir / f"normality_{seg.label.lower()}.json"
    report_path.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n",
                           encoding="utf-8")
    fig_path = render_histogram(
        hist_raw,
        cfg.out_dir / "figures" / f"histogram_{seg.label.lower()}.svg",
        overlay=hist_demeaned,
        title=f"annual increments {seg.increment_years[0]}-"
              f"{seg.increment_years[1]}: original and demeaned",
        x_label="annual increment ($)", y_label="count")

    print(f"pooled {len(pooled)} residuals; W'={sf_before.w_stat:.5f} "
          f"p={sf_before.p_value:.2e} before trim", file=out)
    print(f"trimmed {trimmed.n_trimmed} beyond +/-{cfg.trim_threshold:g}; "
          f"W'={sf_after.w_stat:.5f} p={sf_after.p_value:.4f} after", file=out)
    print(report_path, file=out)
    print(fig_path, file=out)
    return 0


def cmd_simulate(cfg, recover, out):
    sim = cfg.raw["simulate"]
    try:
        params = ModelParams(A=float(sim["A"]), C=float(sim["C"]),
                             t0=int(sim["t0"]),
                             cohort_factor=float(sim["cohort_factor"]))
    except (KeyError, TypeError, ValueError, InertiaError) as exc:
        raise ConfigError(f"bad simulate parameters: {exc}") from None
    cohort = None
    if sim.get("cohort_path"):
        # one economy is simulated; with a multi-country cohort file the
        # first code wins
        cohorts = load_cohort_csv(sim["cohort_path"])
        cohort = cohorts[sorted(cohorts)[0]]
    try:
        sim_cfg = SimConfig(params=params, years=int(sim["years"]),
                            cohort=cohort,
                            noise_sigma=float(sim["noise_sigma"]),
                            seed=int(sim["seed"]),
                            linearize=bool(sim["linearize"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad simulate parameters: {exc}") from None
    series = simulate_series(sim_cfg)
    ds = Dataset(series={series.country.code: series}, provenance="simulated")
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = cfg.out_dir / "simulated.csv"
    write_long_csv(ds, csv_path)
    print(csv_path, file=out)

    if recover:
        rec = sim.get("recover", {})
        report = run_recovery(params, steps=int(sim["years"]),
                              noise_sigma=float(sim["noise_sigma"]),
                              n_trials=int(rec.get("trials", 1000)),
                              base_seed=int(sim["seed"]),
                              alpha=float(rec.get("alpha", 0.05)),
                              linearize=bool(sim["linearize"]))
        payload = {
            "true_A": report.true_A,
            "noise_sigma": report.noise_sigma,
            "steps": report.steps,
            "n_trials": report.n_trials,
            "mean_estimate": report.mean_estimate,
            "sd_estimate": report.sd_estimate,
            "bias": report.bias,
            "bias_bound": report.bias_bound,
            "bias_ok": report.bias_ok,
            "rejection_rate": report.rejection_rate,
            "alpha": report.alpha,
        }
        rec_path = cfg.out_dir / "recovery.json"
        rec_path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                            encoding="utf-8")
        print(f"A recovered as {report.mean_estimate:.3f} "
              f"(true {report.true_A:g}, bias {report.bias:+.3f}); "
              f"zero-slope rejected in {report.rejection_rate:.1%} of trials",
              file=out)
        print(rec_path, file=out)
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH",
                        help="JSON run configuration (default: bundled snapshot)")
    common.add_argument("--out", metavar="DIR",
                        help="output directory (default: $INERTIA_OUT or ./out)")
    common.add_argument("--bin-width", type=float, dest="bin_width",
                        metavar="DOLLARS", help="histogram bin width")
    common.add_argument("--trim", type=float, metavar="DOLLARS",
                        help="outlier trim threshold for residuals")
    common.add_argument("--round", type=int, metavar="DIGITS",
                        help="display rounding for emitted tables")
    common.add_argument("--level-timing", choices=("previous", "current"),
                        dest="level_timing",
                        help="level regressor for increment regressions")

    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Inertial-growth analysis of real GDP per capita panels.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", parents=[common],
                   help="load the panel and check segment coverage")
    sub.add_parser("analyze", parents=[common],
                   help="emit break, mean-increment, and regression tables "
                        "plus per-country figures")
    p_norm = sub.add_parser("normality", parents=[common],
                            help="pool demeaned increments and test normality")
    p_norm.add_argument("--segment", choices=("pre", "post"), default="post",
                        help="which era to pool (default post)")
    p_sim = sub.add_parser("simulate", parents=[common],
                           help="simulate a synthetic economy; optionally "
                                "run the recovery experiment")
    p_sim.add_argument("--seed", type=int, help="generator seed")
    p_sim.add_argument("--linearize", action="store_true", default=False,
                       help="use the arithmetic (linearized) update")
    p_sim.add_argument("--recover", action="store_true", default=False,
                       help="run the seeded recovery experiment")
    return parser


def main(argv=None, out=None):
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args)
        if args.command == "validate":
            return cmd_validate(cfg, out)
        if args.command == "analyze":
            return cmd_analyze(cfg, out)
        if args.command == "normality":
            return cmd_normality(cfg, args.segment.upper(), out)
        if args.command == "simulate":
            return cmd_simulate(cfg, args.recover, out)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"{PROG}: ConfigError: {exc}", file=sys.stderr)
        return 2
    except InertiaError as exc:
        print(f"{PROG}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
