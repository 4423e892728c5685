# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled numerical kernels.

Same five-function surface as ``_pure``; selected automatically at import
when the extension built. Accepts any C-contiguous double buffer (numpy
arrays, array('d'), ...) for the vector routines.
"""

from libc.math cimport erfc, exp, fabs, lgamma, log, sqrt

BACKEND = "fast"

cdef double SQRT2 = sqrt(2.0)
cdef double SQRT_2PI = sqrt(2.0 * 3.14159265358979323846)

cdef double[6] A_COEF
cdef double[5] B_COEF
cdef double[6] C_COEF
cdef double[4] D_COEF
A_COEF[0] = -3.969683028665376e+01; A_COEF[1] = 2.209460984245205e+02
A_COEF[2] = -2.759285104469687e+02; A_COEF[3] = 1.383577518672690e+02
A_COEF[4] = -3.066479806614716e+01; A_COEF[5] = 2.506628277459239e+00
B_COEF[0] = -5.447609879822406e+01; B_COEF[1] = 1.615858368580409e+02
B_COEF[2] = -1.556989798598866e+02; B_COEF[3] = 6.680131188771972e+01
B_COEF[4] = -1.328068155288572e+01
C_COEF[0] = -7.784894002430293e-03; C_COEF[1] = -3.223964580411365e-01
C_COEF[2] = -2.400758277161838e+00; C_COEF[3] = -2.549732539343734e+00
C_COEF[4] = 4.374664141464968e+00;  C_COEF[5] = 2.938163982698783e+00
D_COEF[0] = 7.784695709041462e-03;  D_COEF[1] = 3.224671290700398e-01
D_COEF[2] = 2.445134137142996e+00;  D_COEF[3] = 3.754408661907416e+00

cdef double P_LOW = 0.02425
cdef double BETA_EPS = 1e-16
cdef double BETA_TINY = 1e-300
cdef int BETA_MAXIT = 500


cdef inline double _norm_cdf(double x) noexcept nogil:
    return 0.5 * erfc(-x / SQRT2)


cdef double _acklam(double p) noexcept nogil:
    cdef double q, r
    if p < P_LOW:
        q = sqrt(-2.0 * log(p))
        return ((((((C_COEF[0] * q + C_COEF[1]) * q + C_COEF[2]) * q
                   + C_COEF[3]) * q + C_COEF[4]) * q + C_COEF[5])
                / ((((D_COEF[0] * q + D_COEF[1]) * q + D_COEF[2]) * q
                    + D_COEF[3]) * q + 1.0))
    if p > 1.0 - P_LOW:
        q = sqrt(-2.0 * log(1.0 - p))
        return -((((((C_COEF[0] * q + C_COEF[1]) * q + C_COEF[2]) * q
                    + C_COEF[3]) * q + C_COEF[4]) * q + C_COEF[5])
                 / ((((D_COEF[0] * q + D_COEF[1]) * q + D_COEF[2]) * q
                     + D_COEF[3]) * q + 1.0))
    q = p - 0.5
    r = q * q
    return ((((((A_COEF[0] * r + A_COEF[1]) * r + A_COEF[2]) * r
               + A_COEF[3]) * r + A_COEF[4]) * r + A_COEF[5]) * q
            / (((((B_COEF[0] * r + B_COEF[1]) * r + B_COEF[2]) * r
                 + B_COEF[3]) * r + B_COEF[4]) * r + 1.0))


cdef double _norm_quantile(double p) noexcept nogil:
    cdef double x = _acklam(p)
    cdef double e = _norm_cdf(x) - p
    cdef double u = e * SQRT_2PI * exp(0.5 * x * x)
    return x - u / (1.0 + 0.5 * x * u)


cdef double _betacf(double a, double b, double x) noexcept nogil:
    cdef double qab = a + b
    cdef double qap = a + 1.0
    cdef double qam = a - 1.0
    cdef double c = 1.0
    cdef double d = 1.0 - qab * x / qap
    cdef double h, aa, delta
    cdef int m, m2
    if fabs(d) < BETA_TINY:
        d = BETA_TINY
    d = 1.0 / d
    h = d
    for m in range(1, BETA_MAXIT + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if fabs(d) < BETA_TINY:
            d = BETA_TINY
        c = 1.0 + aa / c
        if fabs(c) < BETA_TINY:
            c = BETA_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if fabs(d) < BETA_TINY:
            d = BETA_TINY
        c = 1.0 + aa / c
        if fabs(c) < BETA_TINY:
            c = BETA_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if fabs(delta - 1.0) < BETA_EPS:
            break
    return h


cdef double _betai(double a, double b, double x) noexcept nogil:
    cdef double ln_bt, bt
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_bt = (lgamma(a + b) - lgamma(a) - lgamma(b)
             + a * log(x) + b * log(1.0 - x))
    bt = exp(ln_bt)
    if x < (a + 1.0) / (a + b + 2.0):
        return bt * _betacf(a, b, x) / a
    return 1.0 - bt * _betacf(b, a, 1.0 - x) / b


def norm_cdf(double x):
    """Standard normal CDF via erfc (accurate in both tails)."""
    return _norm_cdf(x)


def norm_sf(double x):
    """Standard normal upper tail P(Z > x)."""
    return 0.5 * erfc(x / SQRT2)


def norm_quantile(double p):
    """Inverse standard normal CDF (Acklam estimate + one Halley step)."""
    return _norm_quantile(p)


def t_sf_two_sided(double t, double df):
    """Two-sided Student-t tail probability P(|T| >= |t|)."""
    cdef double x, p
    if t == 0.0:
        return 1.0
    x = df / (df + t * t)
    p = _betai(0.5 * df, 0.5, x)
    if p < 0.0:
        return 0.0
    if p > 1.0:
        return 1.0
    return p


def ols_core(const double[::1] xs, const double[::1] ys):
    """Simple-regression accumulations; see the pure backend for the contract."""
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t i
    cdef double mx = 0.0, my = 0.0
    cdef double sxx = 0.0, sxy = 0.0, syy = 0.0
    cdef double dx, dy, r, ssr, slope, intercept, slope_se, r_squared
    for i in range(n):
        mx += xs[i]
        my += ys[i]
    mx /= n
    my /= n
    for i in range(n):
        dx = xs[i] - mx
        dy = ys[i] - my
        sxx += dx * dx
        sxy += dx * dy
        syy += dy * dy
    slope = sxy / sxx
    intercept = my - slope * mx
    ssr = 0.0
    for i in range(n):
        r = (ys[i] - my) - slope * (xs[i] - mx)
        ssr += r * r
    if ssr > 0.0:
        slope_se = sqrt(ssr / (n - 2) / sxx)
    else:
        ssr = 0.0
        slope_se = 0.0
    if syy > 0.0:
        r_squared = 1.0 - ssr / syy
        if r_squared < 0.0:
            r_squared = 0.0
        elif r_squared > 1.0:
            r_squared = 1.0
    else:
        r_squared = 1.0
    return slope, intercept, slope_se, r_squared, ssr, sxx, syy


def sf_wstat(const double[::1] sorted_xs):
    """Normality statistic W' for an ascending-sorted sample."""
    cdef Py_ssize_t n = sorted_xs.shape[0]
    cdef Py_ssize_t i
    cdef double denom = n + 0.25
    cdef double mean = 0.0
    cdef double mm = 0.0, mx = 0.0, xx = 0.0
    cdef double m, dx, w
    for i in range(n):
        mean += sorted_xs[i]
    mean /= n
    for i in range(n):
        m = _norm_quantile((i + 0.625) / denom)
        dx = sorted_xs[i] - mean
        mm += m * m
        mx += m * dx
        xx += dx * dx
    w = (mx * mx) / (mm * xx)
    return w if w < 1.0 else 1.0
