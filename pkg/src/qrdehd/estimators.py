"""Quantile estimators: Harrell-Davis, trimmed Harrell-Davis, Hyndman-Fan 7.

All estimators share one contract: given a sorted sample and a probability
p in [0, 1], return a value inside [min(x), max(x)].  An "estimator" in this
package is simply a callable (Sample, p) -> float; the small dataclasses at
the bottom exist so the QRDE builder and the CLI can carry configuration
(such as the THD trim width) around as a single object.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from .special import beta_cdf_grid, _reg_inc_beta_core

QuantileEstimator = Callable[["Sample", float], float]

_HDI_TOL = 1e-9


class Sample:
    """Validated, sorted collection of finite real observations."""

    __slots__ = ("values",)

    def __init__(self, values: Iterable[float]):
        arr = np.asarray(list(values) if not hasattr(values, "__array__") else values,
                         dtype=float).ravel()
        if arr.size < 1:
            raise ValueError("sample must contain at least one value")
        if not np.all(np.isfinite(arr)):
            raise ValueError("sample values must be finite")
        arr = np.sort(arr)
        arr.flags.writeable = False
        self.values = arr

    @property
    def n(self) -> int:
        return int(self.values.size)

    @property
    def min(self) -> float:
        return float(self.values[0])

    @property
    def max(self) -> float:
        return float(self.values[-1])

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Sample(n={self.n}, range=[{self.min}, {self.max}])"


def _check_p(p: float) -> float:
    if not (math.isfinite(p) and 0.0 <= p <= 1.0):
        raise ValueError(f"probability must lie in [0, 1], got {p!r}")
    return float(p)


@lru_cache(maxsize=64)
def _unit_grid(n: int) -> np.ndarray:
    g = np.arange(n + 1) / n
    g.flags.writeable = False
    return g


def hd_weights(n: int, p: float) -> np.ndarray:
    """Harrell-Davis order-statistic weights for sample size n at level p.

    weights[i] = I_{(i+1)/n}(a, b) - I_{i/n}(a, b) with a = (n+1)p,
    b = (n+1)(1-p).  The p=0 and p=1 limits are the point masses on the
    first and last order statistic.
    """
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    p = _check_p(p)
    w = np.zeros(n)
    if p == 0.0:
        w[0] = 1.0
        return w
    if p == 1.0:
        w[-1] = 1.0
        return w
    a = (n + 1) * p
    b = (n + 1) * (1.0 - p)
    cdf = beta_cdf_grid(a, b, _unit_grid(n))
    np.subtract(cdf[1:], cdf[:-1], out=w)
    np.clip(w, 0.0, 1.0, out=w)
    return w


def hd_quantile(sample: Sample, p: float) -> float:
    """Harrell-Davis quantile: beta-weighted sum of the order statistics."""
    q = float(np.dot(hd_weights(sample.n, p), sample.values))
    return min(max(q, sample.min), sample.max)


def _beta_hdi_left(a: float, b: float, width: float) -> float:
    # Left endpoint of the highest-density interval of given width for
    # Beta(a, b): maximize F(L + width) - F(L) over L in [0, 1 - width] by
    # ternary search (the objective is unimodal for a unimodal Beta).
    lo, hi = 0.0, 1.0 - width

    def mass(left: float) -> float:
        return _reg_inc_beta_core(left + width, a, b) - _reg_inc_beta_core(left, a, b)

    while hi - lo > _HDI_TOL:
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if mass(m1) < mass(m2):
            lo = m1
        else:
            hi = m2
    return 0.5 * (lo + hi)


def thd_quantile(sample: Sample, p: float, width: float) -> float:
    """Trimmed Harrell-Davis quantile.

    The Beta(a, b) weighting distribution is restricted to its
    highest-density interval of the given width on the probability axis and
    renormalized, which strips most of the weight from extreme order
    statistics.  width=1 reproduces hd_quantile.
    """
    if not (math.isfinite(width) and 0.0 < width <= 1.0):
        raise ValueError(f"trim width must lie in (0, 1], got {width!r}")
    p = _check_p(p)
    if width == 1.0:
        return hd_quantile(sample, p)
    if p == 0.0:
        return sample.min
    if p == 1.0:
        return sample.max
    n = sample.n
    if n == 1:
        return sample.min
    a = (n + 1) * p
    b = (n + 1) * (1.0 - p)
    left = _beta_hdi_left(a, b, width)
    ts = np.clip(_unit_grid(n), left, left + width)
    cdf = beta_cdf_grid(a, b, ts)
    denom = cdf[-1] - cdf[0]
    w = np.clip(np.diff(cdf), 0.0, None) / denom
    q = float(np.dot(w, sample.values))
    return min(max(q, sample.min), sample.max)


def hf7_quantile(sample: Sample, p: float) -> float:
    """Traditional quantile estimator (type 7 of the Hyndman-Fan taxonomy)."""
    p = _check_p(p)
    x = sample.values
    n = sample.n
    h = (n - 1) * p + 1.0
    i = int(math.floor(h))
    if i >= n:
        return float(x[-1])
    frac = h - i
    return float(x[i - 1] + frac * (x[i] - x[i - 1]))


def quantile_curve(
    sample: Sample, estimator: QuantileEstimator, ps: Sequence[float]
) -> np.ndarray:
    """Evaluate an estimator over a nondecreasing probability grid."""
    ps = np.asarray(ps, dtype=float)
    if ps.size and np.any(np.diff(ps) < 0):
        raise ValueError("probabilities must be sorted nondecreasing")
    return np.array([estimator(sample, p) for p in ps])


@dataclass(frozen=True)
class HarrellDavis:
    """Harrell-Davis estimator as a configured callable."""

    def __call__(self, sample: Sample, p: float) -> float:
        return hd_quantile(sample, p)


@dataclass(frozen=True)
class TrimmedHarrellDavis:
    """Trimmed Harrell-Davis estimator.

    A width of None applies the 1/sqrt(n) rule of thumb at call time.
    """

    width: float | None = None

    def __call__(self, sample: Sample, p: float) -> float:
        w = self.width if self.width is not None else 1.0 / math.sqrt(sample.n)
        return thd_quantile(sample, p, w)


@dataclass(frozen=True)
class HyndmanFan7:
    """Hyndman-Fan type 7 estimator as a configured callable."""

    def __call__(self, sample: Sample, p: float) -> float:
        return hf7_quantile(sample, p)
