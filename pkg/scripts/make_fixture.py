#!/usr/bin/env python3
"""Generate the bundled synthetic GDP snapshot.

Builds 13 country series over 1870-1940 (wide CSV) and 1950-2011 (long
CSV) whose per-country increment statistics are calibrated exactly to the
published estimates in TARGETS: sample mean and standard deviation of the
annual increments, the level-on-time regression slope of each segment, the
increment-on-lagged-level slope after 1950, and the increment-on-time
slope before 1940. Documented crisis-year deviations (1982/1991/2009, ...)
are injected so the pooled residual tails behave like the real panel:
roughly 19 demeaned values beyond +/-$800, decisive non-normality before
trimming, and no rejection after.

Calibration is a linear-constraint projection: base noise (truncated
normal after 1950, Laplace before 1940, where reconstructed history shows
exponential-looking residuals) is projected orthogonal to the constraint
rows, a minimum-norm particular solution hits the targets, and a final
scale factor pins the sample standard deviation. The master seed is chosen
by search so the tail counts and test p-values land inside comfortable
margins; everything is deterministic given that seed.

This script deliberately uses its own numpy/scipy statistics (including
scipy's t tail and normal quantile) rather than the inertia package, so
the fixture also serves as an independent cross-check of the package's
kernels.

Usage: python3 scripts/make_fixture.py [--out-dir DIR] [--max-seeds N]
"""

import argparse
import json
from pathlib import Path

import numpy as np
from scipy import stats as sps

PRE_LEVEL_YEARS = np.arange(1870, 1941)
PRE_INC_YEARS = np.arange(1871, 1941)
POST_LEVEL_YEARS = np.arange(1950, 2012)
POST_INC_YEARS = np.arange(1951, 2012)

# code, name, level 1870, level 1950,
#   pre  (inc mean, inc std, inc-vs-time slope, level-vs-time slope),
#   post (inc mean, inc std, inc-vs-level slope, level-vs-time slope)
TARGETS = [
    ("AUS", "Australia",      3273.0, 7412.0, (41.3, 221.7,  0.356, 25.7), (303.2, 257.5,  0.016, 310.2)),
    ("AUT", "Austria",        1863.0, 3706.0, (30.0, 156.1,  0.354, 21.4), (344.2, 272.9,  0.006, 349.9)),
    ("BEL", "Belgium",        2692.0, 5462.0, (26.7, 188.5, -0.478, 32.3), (303.9, 264.9,  0.007, 321.3)),
    ("CAN", "Canada",         1695.0, 7291.0, (52.5, 239.6,  0.708, 48.8), (295.2, 353.2,  0.006, 314.0)),
    ("FRA", "France",         1876.0, 5186.0, (31.0, 216.5, -0.216, 38.2), (272.2, 223.7, -0.006, 298.1)),
    ("ITA", "Italy",          1499.0, 3502.0, (28.7, 123.5,  0.692, 30.5), (242.5, 277.6, -0.013, 286.2)),
    ("JPN", "Japan",           737.0, 1919.0, (30.5,  81.7,  1.061, 24.6), (297.3, 412.7, -0.010, 348.1)),
    ("NLD", "Netherlands",    2757.0, 5996.0, (29.6, 192.3, -0.217, 38.9), (307.2, 305.4,  0.006, 319.5)),
    ("ESP", "Spain",          1207.0, 2189.0, (12.5, 108.8, -0.680, 14.5), (240.7, 236.0,  0.002, 319.5)),
    ("SWE", "Sweden",         1662.0, 6739.0, (54.6, 138.8,  1.403, 52.9), (317.5, 395.1,  0.017, 299.0)),
    ("CHE", "Switzerland",    2102.0, 9064.0, (61.4, 167.1,  0.585, 61.4), (271.7, 378.6, -0.005, 247.2)),
    ("GBR", "United Kingdom", 3190.0, 6939.0, (52.4, 164.4,  1.257, 39.4), (253.1, 315.8,  0.007, 282.6)),
    ("USA", "United States",  2445.0, 9561.0, (65.2, 283.0,  0.552, 60.9), (350.3, 431.3,  0.006, 387.7)),
]

# Documented post-1950 crisis/boom increments, injected verbatim as
# (year, increment in dollars): the 1974/75 oil shocks, the early-80s and
# early-90s recessions, and the near-universal 2009 falls. These carry the
# pooled residual tail, as they do in the measured panel.
POST_INJECTIONS = {
    "AUT": [(2009, -943.8), (2007, 842.2)],
    "BEL": [(2009, -696.1)],
    "CAN": [(1982, -692.8), (1991, -609.8), (2009, -900.8)],
    "CHE": [(1975, -1350.3), (2009, -700.3)],
    "FRA": [(2009, -699.8)],
    "GBR": [(2009, -949.9)],
    "ITA": [(2009, -799.5)],
    "JPN": [(1974, -749.7), (2009, -1199.7)],
    "NLD": [(2009, -899.8)],
    "SWE": [(2009, -1339.5)],
    "USA": [(2009, -1099.7)],
}

NOISE_CLIP_POST = 2.6
NOISE_CLIP_PRE = 5.0


def truncated_normal(rng, n, clip):
    e = rng.standard_normal(n)
    bad = np.abs(e) > clip
    while bad.any():
        e[bad] = rng.standard_normal(int(bad.sum()))
        bad = np.abs(e) > clip
    return e


def truncated_laplace(rng, n, clip):
    e = rng.laplace(0.0, 1.0 / np.sqrt(2.0), n)
    bad = np.abs(e) > clip
    while bad.any():
        e[bad] = rng.laplace(0.0, 1.0 / np.sqrt(2.0), int(bad.sum()))
        bad = np.abs(e) > clip
    return e


def level_slope_weights(level_years):
    """Weights w with w . d = OLS slope of the cumulated level path on time."""
    ly = np.asarray(level_years, float)
    c = (ly - ly.mean()) / ((ly - ly.mean()) ** 2).sum()
    w = np.cumsum(c[::-1])[::-1]
    return w[1:]


def slope_row(x):
    xc = np.asarray(x, float) - np.mean(x)
    return xc / (xc ** 2).sum()


def solve_constrained(e, rows, targets, mean, std):
    """Increments with exact linear-functional targets and exact sample std.

    rows[0] must be the mean functional. The noise e only contributes its
    component orthogonal to all constraint rows, rescaled so the sample
    standard deviation comes out exactly ``std``.
    """
    C = np.vstack(rows)
    G = C @ C.T
    d0 = C.T @ np.linalg.solve(G, np.asarray(targets, float))
    e_perp = e - C.T @ np.linalg.solve(G, C @ e)
    n = e.size
    var0 = ((d0 - mean) ** 2).sum() / (n - 1)
    ssq = (e_perp ** 2).sum()
    if std ** 2 <= var0:
        raise RuntimeError(f"targets need more variance than allowed "
                           f"({np.sqrt(var0):.1f} vs {std:.1f})")
    kappa = np.sqrt((std ** 2 - var0) * (n - 1) / ssq)
    return d0 + kappa * e_perp


def build_pre(rng, g1870, target):
    mean, std, time_slope, level_slope = target
    e = truncated_laplace(rng, PRE_INC_YEARS.size, NOISE_CLIP_PRE)
    n = e.size
    rows = [np.full(n, 1.0 / n),
            slope_row(PRE_INC_YEARS),
            level_slope_weights(PRE_LEVEL_YEARS)]
    d = solve_constrained(e, rows, [mean, time_slope, level_slope], mean, std)
    return np.concatenate([[g1870], g1870 + np.cumsum(d)])


def build_post(rng, code, g1950, target):
    mean, std, level_reg_slope, level_slope = target
    n = POST_INC_YEARS.size
    e = truncated_normal(rng, n, NOISE_CLIP_POST)
    for year, increment in POST_INJECTIONS.get(code, []):
        e[year - POST_INC_YEARS[0]] = (increment - mean) / std
    mean_row = np.full(n, 1.0 / n)
    w = level_slope_weights(POST_LEVEL_YEARS)
    # The lagged-level regressor depends on the increments themselves, so
    # iterate the constraint to its fixed point.
    lagged = g1950 + mean * np.arange(n, dtype=float)
    d = None
    for _ in range(25):
        rows = [mean_row, w, slope_row(lagged)]
        d = solve_constrained(e, rows, [mean, level_slope, level_reg_slope],
                              mean, std)
        new_lagged = np.concatenate([[g1950], g1950 + np.cumsum(d)[:-1]])
        if np.max(np.abs(new_lagged - lagged)) < 1e-9:
            lagged = new_lagged
            break
        lagged = new_lagged
    levels = np.concatenate([[g1950], g1950 + np.cumsum(d)])
    realized = ols(lagged, np.diff(levels))[0]
    if abs(realized - level_reg_slope) > 1e-8:
        raise RuntimeError(f"{code}: level regression did not converge "
                           f"({realized} vs {level_reg_slope})")
    return levels


def ols(x, y):
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    n = x.size
    xc = x - x.mean()
    yc = y - y.mean()
    sxx = (xc ** 2).sum()
    slope = (xc * yc).sum() / sxx
    ssr = ((yc - slope * xc) ** 2).sum()
    se = np.sqrt(ssr / (n - 2) / sxx)
    t = slope / se
    p = 2.0 * sps.t.sf(abs(t), n - 2)
    return slope, se, t, p


def sf_test(x):
    x = np.sort(np.asarray(x, float))
    n = x.size
    m = sps.norm.ppf((np.arange(1, n + 1) - 0.375) / (n + 0.25))
    w = np.corrcoef(m, x)[0, 1] ** 2
    u = np.log(n)
    v = np.log(u)
    mu = -1.2725 + 1.0521 * (v - u)
    sig = 1.0308 - 0.26758 * (v + 2.0 / u)
    z = (np.log(1.0 - w) - mu) / sig
    return w, float(sps.norm.sf(z))


def build_panel(master_seed):
    pre = {}
    post = {}
    for idx, (code, _, g1870, g1950, t_pre, t_post) in enumerate(TARGETS):
        rng_pre = np.random.default_rng([master_seed, idx, 0])
        rng_post = np.random.default_rng([master_seed, idx, 1])
        pre[code] = np.round(build_pre(rng_pre, g1870, t_pre), 2)
        post[code] = np.round(build_post(rng_post, code, g1950, t_post), 2)
    return pre, post


def verify(pre, post):
    """Re-derive every statistic the acceptance bands care about from the
    rounded levels; returns (ok, report)."""
    report = {"countries": {}}
    ok = True

    demeaned_post = []
    raw_pre = []
    pre_insignificant = 0
    for code, _, _, _, t_pre, t_post in TARGETS:
        entry = {}
        inc_pre = np.diff(pre[code])
        inc_post = np.diff(post[code])
        lagged = post[code][:-1]

        m_post, s_post = inc_post.mean(), inc_post.std(ddof=1)
        entry["post_mean"] = round(float(m_post), 3)
        entry["post_std"] = round(float(s_post), 3)
        ok &= abs(m_post - t_post[0]) < 0.2 and abs(s_post - t_post[1]) < 0.2

        m_pre = inc_pre.mean()
        entry["pre_mean"] = round(float(m_pre), 3)
        ok &= abs(m_pre - t_pre[0]) < 0.2

        slope_post_level = ols(POST_LEVEL_YEARS, post[code])[0]
        slope_pre_level = ols(PRE_LEVEL_YEARS, pre[code])[0]
        entry["break_ratio"] = round(float(slope_post_level / slope_pre_level), 3)
        ok &= abs(slope_post_level - t_post[3]) < 0.3
        ok &= abs(slope_pre_level - t_pre[3]) < 0.3

        slope, se, t, p = ols(lagged, inc_post)
        entry["post_vs_level"] = [round(float(v), 5) for v in (slope, se, p)]
        ok &= abs(slope - t_post[2]) < 5e-4
        if code == "AUS":
            ok &= p < 0.008
        if code == "AUT":
            ok &= p > 0.12

        slope, se, t, p = ols(PRE_INC_YEARS, inc_pre)
        entry["pre_vs_time"] = [round(float(v), 5) for v in (slope, se, p)]
        ok &= abs(slope - t_pre[2]) < 5e-4
        if code == "JPN":
            ok &= 0.013 < p < 0.047
        elif p > 0.05:
            pre_insignificant += 1

        ok &= pre[code].min() > 100 and post[code].min() > 100

        demeaned_post.append(inc_post - m_post)
        raw_pre.append(inc_pre - m_pre)
        report["countries"][code] = entry

    pooled = np.concatenate(demeaned_post)
    report["n_pooled_post"] = int(pooled.size)
    ok &= pooled.size == 13 * 61

    beyond = np.abs(pooled) > 800.0
    report["n_beyond_800"] = int(beyond.sum())
    ok &= 17 <= beyond.sum() <= 21
    # keep a safety margin around the threshold itself
    ok &= not np.any((np.abs(pooled) > 794.0) & (np.abs(pooled) < 806.0))

    w_b, p_b = sf_test(pooled)
    w_a, p_a = sf_test(pooled[~beyond])
    report["sf_post"] = {"w_before": round(w_b, 5), "p_before": float(p_b),
                         "w_after": round(w_a, 5), "p_after": float(p_a)}
    ok &= p_b < 1e-5 and p_a > 0.02

    pooled_pre = np.concatenate(raw_pre)
    w_pre, p_pre = sf_test(pooled_pre)
    report["sf_pre"] = {"w": round(w_pre, 5), "p": float(p_pre)}
    ok &= p_pre < 1e-3

    report["pre_insignificant"] = pre_insignificant
    ok &= pre_insignificant >= 9

    return bool(ok), report


def write_wide(path, panel, years):
    codes = sorted(panel)
    lines = ["year," + ",".join(codes)]
    for i, year in enumerate(years):
        lines.append(f"{year}," + ",".join(repr(float(panel[c][i]))
                                           for c in codes))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_long(path, panel, years):
    lines = ["country,year,gdp_pc"]
    for code in sorted(panel):
        for year, value in zip(years, panel[code]):
            lines.append(f"{code},{year},{repr(float(value))}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default="src/inertia/fixtures")
    ap.add_argument("--max-seeds", type=int, default=4000)
    args = ap.parse_args()

    chosen = None
    fallback = None
    for master_seed in range(args.max_seeds):
        try:
            pre, post = build_panel(master_seed)
        except RuntimeError:
            continue
        ok, report = verify(pre, post)
        if not ok:
            continue
        if report["n_beyond_800"] == 19:
            chosen = (master_seed, pre, post, report)
            break
        if fallback is None:
            fallback = (master_seed, pre, post, report)
    if chosen is None:
        chosen = fallback
    if chosen is None:
        raise SystemExit("no seed satisfied every check; widen the search")

    master_seed, pre, post, report = chosen
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_wide(out_dir / "gdp_1870_1940_wide.csv", pre, PRE_LEVEL_YEARS)
    write_long(out_dir / "gdp_1950_2011_long.csv", post, POST_LEVEL_YEARS)
    provenance = {
        "generator": "scripts/make_fixture.py",
        "master_seed": master_seed,
        "note": "synthetic panel; per-country increment statistics "
                "calibrated to published 13-country estimates",
        "checks": report,
    }
    (out_dir / "provenance.json").write_text(
        json.dumps(provenance, indent=2, sort_keys=True) + "\n",
        encoding="utf-8")
    print(f"seed {master_seed}: n_beyond_800={report['n_beyond_800']} "
          f"sf_post={report['sf_post']} pre_insig={report['pre_insignificant']}")
    print(f"wrote {out_dir}/gdp_1870_1940_wide.csv, "
          f"{out_dir}/gdp_1950_2011_long.csv, {out_dir}/provenance.json")


if __name__ == "__main__":
    main()
