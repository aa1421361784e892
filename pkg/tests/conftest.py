"""Shared oracles, independent of the library's evaluation paths."""
from __future__ import annotations

import math

import numpy as np
import pytest
from scipy import integrate
from scipy.special import gammaln


def beta_cdf_integer_oracle(t: float, a: int, b: int) -> float:
    """Closed-form Beta CDF for integer shapes via the binomial expansion.

    I_t(a, b) = sum_{j=a}^{a+b-1} C(a+b-1, j) t^j (1-t)^(a+b-1-j).
    """
    m = a + b - 1
    return sum(
        math.comb(m, j) * t**j * (1.0 - t) ** (m - j) for j in range(a, m + 1)
    )


def beta_cdf_quad_oracle(t: float, a: float, b: float) -> float:
    """Beta CDF by adaptive quadrature of the density (scipy machinery only)."""
    log_norm = gammaln(a) + gammaln(b) - gammaln(a + b)

    def pdf(u: float) -> float:
        if u <= 0.0 or u >= 1.0:
            return 0.0
        return math.exp((a - 1.0) * math.log(u) + (b - 1.0) * math.log1p(-u) - log_norm)

    value, _ = integrate.quad(pdf, 0.0, t, limit=200, epsabs=1e-13, epsrel=1e-13)
    return value


def hd_weights_quad_oracle(n: int, p: float) -> np.ndarray:
    """Brute-force HD weights: quadrature of the Beta density per interval."""
    a = (n + 1) * p
    b = (n + 1) * (1.0 - p)
    log_norm = gammaln(a) + gammaln(b) - gammaln(a + b)

    def pdf(u: float) -> float:
        if u <= 0.0 or u >= 1.0:
            return 0.0
        return math.exp((a - 1.0) * math.log(u) + (b - 1.0) * math.log1p(-u) - log_norm)

    w = np.empty(n)
    for i in range(n):
        w[i], _ = integrate.quad(
            pdf, i / n, (i + 1) / n, limit=400, epsabs=1e-13, epsrel=1e-13,
            points=[i / n, (i + 1) / n],
        )
    return w


def ecdf_sup_distance(xs: np.ndarray, ys: np.ndarray) -> float:
    """Kolmogorov-style sup distance between two empirical CDFs."""
    xs = np.sort(xs)
    ys = np.sort(ys)
    pts = np.concatenate([xs, ys])
    fx = np.searchsorted(xs, pts, side="right") / xs.size
    fy = np.searchsorted(ys, pts, side="right") / ys.size
    return float(np.max(np.abs(fx - fy)))


@pytest.fixture(scope="session", autouse=True)
def warm_numba_kernels():
    # JIT-compile the incomplete beta kernels once so timed tests measure
    # the algorithms, not compilation.
    from qrdehd import hd_quantile, hd_weights, Sample

    hd_weights(5, 0.5)
    hd_quantile(Sample([1.0, 2.0]), 0.25)
