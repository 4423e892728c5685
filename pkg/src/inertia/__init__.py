"""Inertial-growth analysis of real GDP per capita.

A library and CLI for the constant-annual-increment view of economic
growth: the growth rate of real GDP per capita is modelled as A/G(t) plus
a scaled demographic term, so the level path is linear in time and the
annual increments fluctuate around a constant A. The package loads
country panels, runs the segmented regression families around the
1941-1949 break, pools and tests residuals for normality, and simulates
synthetic economies for parameter-recovery experiments.
"""

from inertia.analysis import (
    BreakRow,
    IncrementSeries,
    MeanIncrementRow,
    PooledResiduals,
    annual_increments,
    break_table,
    demean_and_pool,
    increment_regression_vs_level,
    increment_regression_vs_time,
    level_time_regression,
    mean_increment_table,
)
from inertia.data import (
    CohortSeries,
    CountryId,
    Dataset,
    GdpSeries,
    SegmentSpec,
    load_cohort_csv,
    load_long_csv,
    load_wide_csv,
    merge_datasets,
    slice_segment,
    write_long_csv,
)
from inertia.model import (
    ModelParams,
    RecoveryReport,
    SimConfig,
    estimate_A,
    growth_rate,
    inertial_forecast,
    inertial_rate,
    run_recovery,
    simulate_series,
)
from inertia.stats import (
    Histogram,
    NormalityResult,
    OlsFit,
    SummaryStats,
    histogram,
    normal_cdf,
    normal_quantile,
    ols_fit,
    shapiro_francia,
    student_t_sf_two_sided,
    summary_stats,
)
from inertia._kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "__version__",
    # data
    "CountryId", "GdpSeries", "CohortSeries", "SegmentSpec", "Dataset",
    "load_long_csv", "load_wide_csv", "load_cohort_csv", "write_long_csv",
    "slice_segment", "merge_datasets",
    # stats
    "OlsFit", "Histogram", "NormalityResult", "SummaryStats",
    "ols_fit", "student_t_sf_two_sided", "normal_quantile", "normal_cdf",
    "shapiro_francia", "histogram", "summary_stats",
    # analysis
    "IncrementSeries", "BreakRow", "MeanIncrementRow", "PooledResiduals",
    "annual_increments", "increment_regression_vs_level",
    "increment_regression_vs_time", "level_time_regression",
    "break_table", "mean_increment_table", "demean_and_pool",
    # model
    "ModelParams", "SimConfig", "RecoveryReport",
    "growth_rate", "inertial_rate", "inertial_forecast", "simulate_series", "estimate_A",
    "run_recovery",
]
