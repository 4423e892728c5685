"""Self-contained statistics: simple OLS with inference, Student-t tails,
the inverse normal CDF, the Shapiro-Francia normality test, histograms, and
summary moments.

All heavy arithmetic is delegated to the kernel backend (compiled when
available, pure Python otherwise); this module owns validation, the result
types, and the Royston p-value approximation for W'.
"""

import math
from dataclasses import dataclass

import numpy as np

from inertia import _kernels
from inertia.errors import (
    InvalidDfError,
    LengthMismatchError,
    NonFiniteInputError,
    NonPositiveBinWidthError,
    OutOfDomainError,
    SampleTooLargeError,
    SampleTooSmallError,
    TooFewPointsError,
    ZeroVarianceError,
)

__all__ = [
    "OlsFit",
    "Histogram",
    "NormalityResult",
    "SummaryStats",
    "ols_fit",
    "student_t_sf_two_sided",
    "normal_quantile",
    "normal_cdf",
    "shapiro_francia",
    "histogram",
    "summary_stats",
]


@dataclass(frozen=True)
class OlsFit:
    """Least-squares line of y on x with standard inference.

    ``degenerate`` marks a perfect fit (zero residual sum of squares); then
    slope_se is 0, t_stat is signed infinity, and p_value is 0.
    """

    slope: float
    intercept: float
    slope_se: float
    t_stat: float
    p_value: float
    r_squared: float
    n: int
    degenerate: bool = False


@dataclass(frozen=True)
class Histogram:
    """Counts of values in half-open bins [origin + k*w, origin + (k+1)*w)."""

    bin_width: float
    origin: float
    counts: dict  # bin index -> count

    @property
    def total(self):
        return sum(self.counts.values())

    def bin_edges(self, k):
        """(left, right) edges of bin k."""
        return (self.origin + k * self.bin_width,
                self.origin + (k + 1) * self.bin_width)

    def sorted_items(self):
        return sorted(self.counts.items())


@dataclass(frozen=True)
class NormalityResult:
    """Shapiro-Francia W' and its Royston p-value."""

    w_stat: float
    p_value: float
    n: int


@dataclass(frozen=True)
class SummaryStats:
    """Sample mean and n-1 standard deviation (std_dev is None when n < 2)."""

    mean: float
    std_dev: float
    n: int


def _as_f64(values, name):
    arr = np.ascontiguousarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise NonFiniteInputError(f"{name} must be one-dimensional")
    if arr.size and not np.isfinite(arr).all():
        raise NonFiniteInputError(f"{name} contains non-finite values")
    return arr


def ols_fit(xs, ys):
    """Fit ys = intercept + slope * xs by least squares.

    Inference is the textbook small-sample kind: slope_se from the n-2
    residual variance, two-sided p-value from the Student-t tail. A perfect
    fit is reported with the degenerate flag rather than raised.
    """
    x = _as_f64(xs, "xs")
    y = _as_f64(ys, "ys")
    if x.size != y.size:
        raise LengthMismatchError(f"xs has {x.size} points, ys has {y.size}")
    n = x.size
    if n < 3:
        raise TooFewPointsError(f"need at least 3 points, got {n}")
    if np.all(x == x[0]):
        raise ZeroVarianceError("xs has zero variance")
    slope, intercept, slope_se, r2, ssr, _, _ = _kernels.ols_core(x, y)
    if ssr == 0.0:
        return OlsFit(slope=slope, intercept=intercept, slope_se=0.0,
                      t_stat=math.copysign(math.inf, slope), p_value=0.0,
                      r_squared=r2, n=n, degenerate=True)
    t = slope / slope_se
    p = _kernels.t_sf_two_sided(t, n - 2)
    return OlsFit(slope=slope, intercept=intercept, slope_se=slope_se,
                  t_stat=t, p_value=p, r_squared=r2, n=n)


def student_t_sf_two_sided(t, df):
    """P(|T| >= |t|) for Student-t with df degrees of freedom.

    Computed through the regularized incomplete beta I_x(df/2, 1/2) with
    x = df/(df + t^2); absolute accuracy is well inside 1e-10.
    """
    df = int(df)
    if df < 1:
        raise InvalidDfError(f"df must be >= 1, got {df}")
    if not math.isfinite(t):
        raise NonFiniteInputError("t must be finite")
    return _kernels.t_sf_two_sided(float(t), df)


def normal_quantile(p):
    """z such that the standard normal CDF at z equals p (0 < p < 1)."""
    if not (0.0 < p < 1.0):
        raise OutOfDomainError(f"p must lie in (0, 1), got {p}")
    return _kernels.norm_quantile(float(p))


def normal_cdf(x):
    """Standard normal CDF, erfc-based."""
    return _kernels.norm_cdf(float(x))


def shapiro_francia(xs):
    """Shapiro-Francia normality test.

    W' is the squared correlation between the order statistics and Blom
    scores; the p-value uses Royston's normal approximation for
    ln(1 - W'), valid for sample sizes up to 5000.
    """
    x = _as_f64(xs, "xs")
    n = x.size
    if n < 8:
        raise SampleTooSmallError(f"need at least 8 values, got {n}")
    if n > 5000:
        raise SampleTooLargeError(f"at most 5000 values supported, got {n}")
    if np.all(x == x[0]):
        raise ZeroVarianceError("sample has zero variance")
    w = _kernels.sf_wstat(np.sort(x))
    if w >= 1.0:
        return NormalityResult(w_stat=1.0, p_value=1.0, n=n)
    u = math.log(n)
    v = math.log(u)
    mu = -1.2725 + 1.0521 * (v - u)
    sigma = 1.0308 - 0.26758 * (v + 2.0 / u)
    z = (math.log(1.0 - w) - mu) / sigma
    return NormalityResult(w_stat=w, p_value=_kernels.norm_sf(z), n=n)


def histogram(xs, bin_width, origin=0.0):
    """Bin values into half-open intervals anchored at ``origin``.

    Value v lands in bin floor((v - origin) / bin_width), so edge values go
    to the bin on their right.
    """
    if bin_width <= 0.0:
        raise NonPositiveBinWidthError(f"bin_width must be > 0, got {bin_width}")
    x = _as_f64(xs, "xs")
    counts = {}
    for v in x:
        k = math.floor((v - origin) / bin_width)
        counts[k] = counts.get(k, 0) + 1
    return Histogram(bin_width=float(bin_width), origin=float(origin),
                     counts=counts)


def summary_stats(xs):
    """Sample mean and n-1 standard deviation."""
    x = _as_f64(xs, "xs")
    n = x.size
    if n < 1:
        raise TooFewPointsError("need at least 1 value")
    mean = float(x.mean())
    if n < 2:
        return SummaryStats(mean=mean, std_dev=None, n=n)
    sd = math.sqrt(float(((x - mean) ** 2).sum()) / (n - 1))
    return SummaryStats(mean=mean, std_dev=sd, n=n)
