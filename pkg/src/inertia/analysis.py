"""The empirical pipeline: annual increments, the three regression
families, the structural-break table, and residual pooling.

Everything operates per (country, segment) and treats countries in sorted
code order, so pooled vectors and emitted tables are reproducible
byte-for-byte. Increments are first differences dG(t) = G(t) - G(t-1) over
a contiguous level window; the pre/post windows around the 1941-1949 break
are configuration, not constants.
"""

from dataclasses import dataclass

from inertia.data import SegmentSpec, slice_segment
from inertia.stats import OlsFit, ols_fit, summary_stats

__all__ = [
    "IncrementSeries",
    "BreakRow",
    "MeanIncrementRow",
    "PooledResiduals",
    "annual_increments",
    "increment_regression_vs_level",
    "increment_regression_vs_time",
    "level_time_regression",
    "break_table",
    "mean_increment_table",
    "demean_and_pool",
]


@dataclass(frozen=True)
class IncrementSeries:
    """Annual increments dG(t) with the level each one grew from.

    ``years`` holds the increment labels t, ``increments`` holds
    G(t) - G(t-1), and ``prior_levels`` holds G(t-1); ``levels`` are the
    attained G(t). All in basis dollars.
    """

    country: object  # CountryId
    segment: SegmentSpec
    years: tuple
    increments: tuple
    prior_levels: tuple

    def __len__(self):
        return len(self.years)

    @property
    def levels(self):
        return tuple(g + d for g, d in zip(self.prior_levels, self.increments))


@dataclass(frozen=True)
class BreakRow:
    """Level-on-time slopes before and after the break, and their ratio."""

    country: object
    post_slope: float
    post_se: float
    pre_slope: float
    pre_se: float

    @property
    def ratio(self):
        return self.post_slope / self.pre_slope


@dataclass(frozen=True)
class MeanIncrementRow:
    """Per-country mean/std of increments in both segments."""

    country: object
    pre: object  # SummaryStats
    post: object  # SummaryStats

    @property
    def mean_ratio(self):
        return self.post.mean / self.pre.mean


@dataclass(frozen=True)
class PooledResiduals:
    """Demeaned increments pooled across countries for one segment.

    Demeaning subtracts each country's own segment-mean increment, so every
    per-country block sums to zero. When a trim threshold is set, values
    strictly beyond it are dropped and counted in ``n_trimmed``.
    """

    segment: SegmentSpec
    values: tuple
    trim_threshold: float = None
    n_trimmed: int = 0

    def __len__(self):
        return len(self.values)


def annual_increments(series, seg):
    """First differences of a series over a segment.

    The series must cover the segment's level years without gaps; one
    increment is produced for each year in the segment's increment range.
    """
    sliced = slice_segment(series, seg)
    idx = {y: i for i, y in enumerate(sliced.years)}
    years = []
    increments = []
    prior = []
    first, last = seg.increment_years
    for t in range(first, last + 1):
        g1 = sliced.values[idx[t]]
        g0 = sliced.values[idx[t - 1]]
        years.append(t)
        increments.append(g1 - g0)
        prior.append(g0)
    return IncrementSeries(country=series.country, segment=seg,
                           years=tuple(years), increments=tuple(increments),
                           prior_levels=tuple(prior))


def increment_regression_vs_level(inc, level_timing="previous"):
    """OLS of dG(t) on the level of GDP per capita (slope in $/$).

    The default regressor is G(t-1), the level the increment grew from;
    ``level_timing="current"`` switches to the attained G(t) for
    sensitivity checks.
    """
    if level_timing == "previous":
        xs = inc.prior_levels
    elif level_timing == "current":
        xs = inc.levels
    else:
        raise ValueError(f"level_timing must be 'previous' or 'current', "
                         f"got {level_timing!r}")
    return ols_fit(xs, inc.increments)


def increment_regression_vs_time(inc):
    """OLS of dG(t) on calendar year (slope in $/y per year)."""
    return ols_fit(inc.years, inc.increments)


def level_time_regression(series, seg):
    """OLS of the level G(t) on calendar year over a segment ($/y)."""
    sliced = slice_segment(series, seg)
    return ols_fit(sliced.years, sliced.values)


def break_table(ds, pre=None, post=None):
    """One BreakRow per country, sorted by code.

    Ratios come from the full-precision slopes; every country must cover
    both segments.
    """
    pre = pre or SegmentSpec.pre()
    post = post or SegmentSpec.post()
    rows = []
    for code in ds.countries():
        series = ds.get(code)
        fit_post = level_time_regression(series, post)
        fit_pre = level_time_regression(series, pre)
        rows.append(BreakRow(country=series.country,
                             post_slope=fit_post.slope, post_se=fit_post.slope_se,
                             pre_slope=fit_pre.slope, pre_se=fit_pre.slope_se))
    return rows


def mean_increment_table(ds, pre=None, post=None):
    """Mean and n-1 std of increments per country and segment."""
    pre = pre or SegmentSpec.pre()
    post = post or SegmentSpec.post()
    rows = []
    for code in ds.countries():
        series = ds.get(code)
        s_pre = summary_stats(annual_increments(series, pre).increments)
        s_post = summary_stats(annual_increments(series, post).increments)
        rows.append(MeanIncrementRow(country=series.country,
                                     pre=s_pre, post=s_post))
    return rows


def demean_and_pool(ds, seg, trim_threshold=None):
    """Pool each country's demeaned increments for one segment.

    Countries contribute in sorted code order. With a trim threshold,
    values with absolute size strictly above it are removed (exact
    threshold hits are kept).
    """
    pooled = []
    for code in ds.countries():
        inc = annual_increments(ds.get(code), seg)
        mean = summary_stats(inc.increments).mean
        pooled.extend(d - mean for d in inc.increments)
    n_trimmed = 0
    if trim_threshold is not None:
        kept = [v for v in pooled if abs(v) <= trim_threshold]
        n_trimmed = len(pooled) - len(kept)
        pooled = kept
    return PooledResiduals(segment=seg, values=tuple(pooled),
                           trim_threshold=trim_threshold, n_trimmed=n_trimmed)
