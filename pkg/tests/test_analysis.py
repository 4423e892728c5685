"""Increment pipeline: differencing, regression families, pooling."""

import math

import numpy as np
import pytest

from inertia import analysis, data, errors


def series(values, first_year=2000, code="SYN"):
    years = tuple(range(first_year, first_year + len(values)))
    return data.GdpSeries(country=data.CountryId(code), basis="SYN",
                          years=years, values=tuple(float(v) for v in values))


def seg_for(s):
    return data.SegmentSpec.custom((s.first_year, s.last_year))


# ---------------------------------------------------------------------------
# annual_increments


def test_increments_constant_level():
    s = series([100, 100, 100])
    inc = analysis.annual_increments(s, seg_for(s))
    assert inc.increments == (0.0, 0.0)


def test_increments_hand_example():
    s = series([100, 110, 125])
    inc = analysis.annual_increments(s, seg_for(s))
    assert inc.increments == (10.0, 15.0)
    assert inc.prior_levels == (100.0, 110.0)
    assert inc.levels == (110.0, 125.0)
    assert inc.years == (2001, 2002)


def test_increment_count_is_levels_minus_one(post_dataset):
    seg = data.SegmentSpec.post()
    total = 0
    for code in post_dataset.countries():
        inc = analysis.annual_increments(post_dataset.get(code), seg)
        assert len(inc) == seg.n_levels - 1 == 61
        total += len(inc)
    assert total == 793


def test_increments_respect_custom_window(post_dataset):
    seg = data.SegmentSpec.custom((1960, 1980))
    inc = analysis.annual_increments(post_dataset.get("FRA"), seg)
    assert inc.years[0] == 1961 and inc.years[-1] == 1980
    assert len(inc) == 20


# ---------------------------------------------------------------------------
# regression families


def test_noiseless_inertial_series_degenerate_everywhere():
    s = series([3000 + 300 * k for k in range(12)])
    inc = analysis.annual_increments(s, seg_for(s))
    for fit in (analysis.increment_regression_vs_level(inc),
                analysis.increment_regression_vs_time(inc)):
        assert fit.degenerate
        assert fit.slope == 0.0


def test_exponential_growth_is_detectable():
    # G(t) = 1000 * exp(0.02 t): increments are exactly proportional to the
    # prior level, so the level regression recovers e^0.02 - 1
    values = [1000.0 * math.exp(0.02 * k) for k in range(61)]
    s = series(values)
    inc = analysis.annual_increments(s, seg_for(s))
    fit = analysis.increment_regression_vs_level(inc)
    assert fit.slope > 0
    assert math.isclose(fit.slope, math.exp(0.02) - 1.0, rel_tol=1e-9)


def test_level_timing_switch():
    values = [1000.0 * math.exp(0.02 * k) for k in range(20)]
    s = series(values)
    inc = analysis.annual_increments(s, seg_for(s))
    prev = analysis.increment_regression_vs_level(inc, level_timing="previous")
    cur = analysis.increment_regression_vs_level(inc, level_timing="current")
    assert math.isclose(cur.slope, 1.0 - math.exp(-0.02), rel_tol=1e-9)
    assert prev.slope > cur.slope
    with pytest.raises(ValueError):
        analysis.increment_regression_vs_level(inc, level_timing="lagged")


def test_level_time_regression_recovers_exact_lines():
    rng = np.random.default_rng(17)
    for _ in range(25):
        a = float(rng.uniform(-500, 500))
        c = float(rng.uniform(1, 5000))
        n = int(rng.integers(3, 80))
        first = int(rng.integers(1800, 2000))
        years = range(first, first + n)
        values = [c + a * (y - first) for y in years]
        if min(values) <= 0:
            continue
        s = series(values, first_year=first)
        fit = analysis.level_time_regression(s, seg_for(s))
        assert math.isclose(fit.slope, a, rel_tol=1e-9, abs_tol=1e-9)
    # with exactly representable coefficients the fit is flagged perfect
    s = series([5000.0 + 300.0 * k for k in range(62)], first_year=1950)
    fit = analysis.level_time_regression(s, seg_for(s))
    assert fit.slope == 300.0 and fit.degenerate


# ---------------------------------------------------------------------------
# break and mean tables


def test_break_ratio_is_exact_quotient(panel):
    rows = analysis.break_table(panel)
    by_code = {r.country.code: r for r in rows}
    for code, row in by_code.items():
        post = analysis.level_time_regression(panel.get(code),
                                              data.SegmentSpec.post())
        pre = analysis.level_time_regression(panel.get(code),
                                             data.SegmentSpec.pre())
        assert row.ratio == post.slope / pre.slope
        assert row.ratio > 0


def test_bundled_reference_level_slopes(panel):
    che_pre = analysis.level_time_regression(panel.get("CHE"),
                                             data.SegmentSpec.pre())
    assert abs(che_pre.slope - 61.4) < 1.0
    assert abs(che_pre.slope_se - 2.0) < 1.0
    us_post = analysis.level_time_regression(panel.get("USA"),
                                             data.SegmentSpec.post())
    assert abs(us_post.slope - 387.7) < 1.0


def test_break_table_no_break_means_unit_ratio():
    values = ([1000 + 50 * k for k in range(11)]
              + [1550 + 50 * k for k in range(11)])
    years = tuple(range(1900, 1911)) + tuple(range(1920, 1931))
    s = data.GdpSeries(country=data.CountryId("SYN"), basis="SYN",
                       years=years, values=tuple(float(v) for v in values))
    ds = data.Dataset(series={"SYN": s})
    pre = data.SegmentSpec.custom((1900, 1910))
    post = data.SegmentSpec.custom((1920, 1930))
    row = analysis.break_table(ds, pre=pre, post=post)[0]
    assert math.isclose(row.ratio, 1.0, rel_tol=1e-12)


def test_mean_increment_table_constant_increments():
    values = ([1000 + 300 * k for k in range(6)]
              + [2800 + 300 * k for k in range(6)])
    years = tuple(range(1900, 1906)) + tuple(range(1910, 1916))
    s = data.GdpSeries(country=data.CountryId("SYN"), basis="SYN",
                       years=years, values=tuple(float(v) for v in values))
    ds = data.Dataset(series={"SYN": s})
    row = analysis.mean_increment_table(
        ds, pre=data.SegmentSpec.custom((1900, 1905)),
        post=data.SegmentSpec.custom((1910, 1915)))[0]
    assert row.pre.mean == 300.0 and row.post.mean == 300.0
    assert row.mean_ratio == 1.0


# ---------------------------------------------------------------------------
# demeaning and pooling


def test_demean_hand_example():
    s = series([100, 110, 125])
    ds = data.Dataset(series={"SYN": s})
    pooled = analysis.demean_and_pool(ds, seg_for(s))
    assert pooled.values == (-2.5, 2.5)
    assert pooled.n_trimmed == 0


def test_demeaned_blocks_sum_to_zero(post_dataset):
    seg = data.SegmentSpec.post()
    for code in post_dataset.countries():
        only = data.Dataset(series={code: post_dataset.get(code)})
        pooled = analysis.demean_and_pool(only, seg)
        assert abs(sum(pooled.values)) < 1e-6


def test_trim_is_strict_inequality():
    # demeaned values are exactly +/-800: strict comparison keeps them
    s = series([1000, 1000 + 0, 1000 + 1600], first_year=2000)
    ds = data.Dataset(series={"SYN": s})
    pooled = analysis.demean_and_pool(ds, seg_for(s), trim_threshold=800.0)
    assert pooled.values == (-800.0, 800.0)
    assert pooled.n_trimmed == 0
    tighter = analysis.demean_and_pool(ds, seg_for(s), trim_threshold=799.0)
    assert tighter.values == ()
    assert tighter.n_trimmed == 2


def test_pooled_count_identity(post_dataset):
    seg = data.SegmentSpec.post()
    full = analysis.demean_and_pool(post_dataset, seg)
    trimmed = analysis.demean_and_pool(post_dataset, seg, trim_threshold=800.0)
    per_country = sum(
        len(analysis.annual_increments(post_dataset.get(c), seg))
        for c in post_dataset.countries())
    assert len(full) == per_country
    assert len(trimmed) == per_country - trimmed.n_trimmed
    assert max(abs(v) for v in trimmed.values) <= 800.0


def test_pooled_normal_panel_keeps_test_size():
    # a panel whose increments really are i.i.d. normal should pass the
    # normality pipeline in the vast majority of seeded draws
    import numpy as np

    from inertia.stats import shapiro_francia

    hits = 0
    for seed in range(50):
        rng = np.random.default_rng(seed)
        series_map = {}
        for k, code in enumerate(("AAA", "BBB", "CCC")):
            levels = 5000.0 + np.cumsum(300.0 + 250.0 * rng.standard_normal(40))
            series_map[code] = data.GdpSeries(
                country=data.CountryId(code), basis="SYN",
                years=tuple(range(1960, 2000)),
                values=tuple(float(v) for v in levels))
        ds = data.Dataset(series=series_map)
        pooled = analysis.demean_and_pool(
            ds, data.SegmentSpec.custom((1960, 1999)))
        if shapiro_francia(pooled.values).p_value > 0.05:
            hits += 1
    assert hits >= 45


def test_pooling_order_is_code_sorted(post_dataset):
    seg = data.SegmentSpec.post()
    pooled = analysis.demean_and_pool(post_dataset, seg)
    rebuilt = []
    for code in sorted(post_dataset.countries()):
        inc = analysis.annual_increments(post_dataset.get(code), seg)
        m = sum(inc.increments) / len(inc)
        rebuilt.extend(d - m for d in inc.increments)
    assert pooled.values == tuple(rebuilt)
