"""Pseudo-histogram density estimation driven by a quantile estimator.

The unit probability axis is split into k bins of width xi = 1/k; the i-th
density bin spans the quantile estimates at the two surrounding cut points
and carries height xi / (right edge - left edge), so every bin holds exactly
xi of probability mass.  The same structure doubles as a piecewise-constant
density, a piecewise-linear CDF, and its exact inverse.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np
from scipy.special import ndtr

from .estimators import QuantileEstimator, Sample, hf7_quantile, quantile_curve

_GAP_EPS = 1e-12

JITTER_ADVICE = (
    "tied or near-tied quantile estimates produce zero-width bins; "
    "jitter the sample first (e.g. `qrdehd jitter --resolution <s>`) "
    "or rerun in permissive mode"
)


@dataclass(frozen=True)
class PseudoHistogram:
    """QRDE output: bin edges (quantile estimates) and bin heights.

    xi is the probability mass of each bin.  In permissive mode degenerate
    bins carry height inf and are listed (1-based) in degenerate_bins.
    """

    xi: float
    edges: np.ndarray
    heights: np.ndarray
    degenerate_bins: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        edges = np.array(self.edges, dtype=float)
        heights = np.array(self.heights, dtype=float)
        if edges.size != heights.size + 1:
            raise ValueError("edge count must be bin count + 1")
        if np.any(np.diff(edges) < 0):
            raise ValueError("edges must be nondecreasing")
        edges.flags.writeable = False
        heights.flags.writeable = False
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "heights", heights)

    @property
    def k(self) -> int:
        return int(self.heights.size)

    @property
    def is_degenerate(self) -> bool:
        return bool(self.degenerate_bins)

    def trimmed(self, p_lo: float, p_hi: float) -> "PseudoHistogram":
        """Keep only the bins fully inside the probability window [p_lo, p_hi].

        Heights are not rescaled; this is a presentational crop used to hide
        boundary spikes, not a re-normalization.
        """
        if not (0.0 <= p_lo < p_hi <= 1.0):
            raise ValueError("require 0 <= p_lo < p_hi <= 1")
        k = self.k
        first = math.ceil(p_lo * k - 1e-9)
        last = math.floor(p_hi * k + 1e-9)
        if last <= first:
            raise ValueError("probability window does not cover any full bin")
        kept = [i + 1 for i in range(first, last)]
        return PseudoHistogram(
            xi=self.xi,
            edges=self.edges[first : last + 1].copy(),
            heights=self.heights[first:last].copy(),
            degenerate_bins=tuple(b for b in self.degenerate_bins if b in kept),
        )


@dataclass(frozen=True)
class DegenerateBinReport:
    """Bins whose quantile edges coincide, making the density unbounded."""

    indices: tuple[int, ...]  # 1-based bin numbers
    advice: str = field(default=JITTER_ADVICE)

    def __str__(self) -> str:
        bins = ", ".join(str(i) for i in self.indices)
        return f"degenerate pseudo-histogram bins: {bins}; {self.advice}"


BuildResult = Union[PseudoHistogram, DegenerateBinReport]


def build_qrde(
    sample: Sample,
    estimator: QuantileEstimator,
    k: int = 1000,
    strict: bool = True,
) -> BuildResult:
    """Build the k-bin pseudo-histogram for the given quantile estimator.

    Bin i spans the estimates at p = (i-1)/k and i/k.  Any bin whose width
    is at most 1e-12 * max(1, sample range) is degenerate: in strict mode
    the function returns a DegenerateBinReport instead of a histogram; in
    permissive mode degenerate bins get height inf and are flagged.
    """
    if k < 1:
        raise ValueError(f"bin count must be a positive integer, got {k!r}")
    xi = 1.0 / k
    ps = np.arange(k + 1) / k
    edges = quantile_curve(sample, estimator, ps)
    if not np.all(np.isfinite(edges)):
        raise RuntimeError("quantile estimator produced non-finite edges")
    gaps = np.diff(edges)
    if np.any(gaps < 0):
        # clamp floating noise so the monotonicity invariant survives
        gaps = np.clip(gaps, 0.0, None)
        edges = np.concatenate(([edges[0]], edges[0] + np.cumsum(gaps)))
    threshold = _GAP_EPS * max(1.0, abs(edges[-1] - edges[0]))
    degenerate = np.flatnonzero(gaps <= threshold)
    if degenerate.size:
        if strict:
            return DegenerateBinReport(tuple(int(i) + 1 for i in degenerate))
        heights = np.full(k, math.inf)
        ok = gaps > threshold
        heights[ok] = xi / gaps[ok]
        return PseudoHistogram(
            xi=xi,
            edges=edges,
            heights=heights,
            degenerate_bins=tuple(int(i) + 1 for i in degenerate),
        )
    return PseudoHistogram(xi=xi, edges=edges, heights=xi / gaps)


def _require_usable(ph: PseudoHistogram) -> None:
    if ph.is_degenerate:
        raise ValueError(
            "pseudo-histogram has degenerate bins "
            f"{ph.degenerate_bins}; {JITTER_ADVICE}"
        )


def density_at(ph: PseudoHistogram, x: float) -> float:
    """Piecewise-constant density value at x (0 outside the support).

    Bins are half-open on the right; the last edge belongs to the last bin.
    """
    _require_usable(ph)
    edges = ph.edges
    if x < edges[0] or x > edges[-1]:
        return 0.0
    if x == edges[-1]:
        return float(ph.heights[-1])
    i = int(np.searchsorted(edges, x, side="right")) - 1
    return float(ph.heights[i])


def cdf_at(ph: PseudoHistogram, x: float) -> float:
    """Piecewise-linear CDF implied by the pseudo-histogram."""
    _require_usable(ph)
    edges = ph.edges
    if x <= edges[0]:
        return 0.0
    if x >= edges[-1]:
        return 1.0
    i = int(np.searchsorted(edges, x, side="right")) - 1
    left, right = edges[i], edges[i + 1]
    return float(i * ph.xi + ph.xi * (x - left) / (right - left))


def quantile_of_qrde(ph: PseudoHistogram, p: float) -> float:
    """Exact piecewise-linear inverse of cdf_at."""
    _require_usable(ph)
    if not (math.isfinite(p) and 0.0 <= p <= 1.0):
        raise ValueError(f"probability must lie in [0, 1], got {p!r}")
    k = ph.k
    t = p * k
    i = int(round(t))
    # snap to the edge when p sits on a grid point up to rounding of p * k
    if 0 <= i <= k and abs(t - i) <= 4.0 * np.finfo(float).eps * max(1.0, t):
        return float(ph.edges[i])
    i = min(int(math.floor(t)), k - 1)
    frac = t - i
    return float(ph.edges[i] + frac * (ph.edges[i + 1] - ph.edges[i]))


def silverman_bandwidth(values: np.ndarray) -> float:
    """Silverman's rule-of-thumb bandwidth for a Gaussian kernel."""
    values = np.asarray(values, dtype=float)
    n = values.size
    sd = float(np.std(values, ddof=1)) if n > 1 else 0.0
    q75, q25 = np.percentile(values, [75, 25])
    iqr = float(q75 - q25)
    spread = min(x for x in (sd, iqr / 1.34) if x > 0) if (sd > 0 or iqr > 0) else 1.0
    return 0.9 * spread * n ** (-0.2)


def _kde_pdf(values: np.ndarray, bandwidth: float, xs: np.ndarray) -> np.ndarray:
    z = (xs[:, None] - values[None, :]) / bandwidth
    return np.exp(-0.5 * z * z).mean(axis=1) / (bandwidth * math.sqrt(2.0 * math.pi))


def _kde_cdf(values: np.ndarray, bandwidth: float, x: float) -> float:
    return float(ndtr((x - values) / bandwidth).mean())


def _kde_median(values: np.ndarray, bandwidth: float) -> float:
    lo = float(values.min()) - 8.0 * bandwidth
    hi = float(values.max()) + 8.0 * bandwidth
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _kde_cdf(values, bandwidth, mid) < 0.5:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-12 * max(1.0, abs(hi)):
            break
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class ComparisonResult:
    """QRDE-HD vs Gaussian KDE vs equal-width histogram on a shared grid."""

    grid: np.ndarray
    qrde_density: np.ndarray
    kde_density: np.ndarray
    hist_density: np.ndarray
    qrde_mass: float
    kde_mass: float
    hist_mass: float
    hf7_median: float
    kde_median: float
    bandwidth: float
    histogram: PseudoHistogram

    @property
    def median_divergence(self) -> float:
        return abs(self.hf7_median - self.kde_median)


def compare_estimates(
    sample: Sample,
    k: int = 1000,
    kde_bandwidth: float | None = None,
    hist_bins: int | None = None,
    grid_points: int = 512,
    estimator: QuantileEstimator | None = None,
) -> Union[ComparisonResult, DegenerateBinReport]:
    """Evaluate the three density estimates and their median disagreement.

    Masses are computed analytically per representation (step-function sums
    for QRDE and the histogram, Gaussian CDF differences for the KDE over
    the grid window) because no finite shared grid can resolve the QRDE
    boundary spikes.
    """
    if sample.n < 2:
        raise ValueError("comparison requires at least two observations")
    if hist_bins is None:
        hist_bins = math.ceil(math.sqrt(sample.n))
    if hist_bins < 1:
        raise ValueError(f"histogram bin count must be positive, got {hist_bins!r}")
    if kde_bandwidth is None:
        kde_bandwidth = silverman_bandwidth(sample.values)
    if not (math.isfinite(kde_bandwidth) and kde_bandwidth > 0):
        raise ValueError(f"bandwidth must be positive, got {kde_bandwidth!r}")
    from .estimators import HarrellDavis  # local to avoid import cycle confusion

    ph = build_qrde(sample, estimator or HarrellDavis(), k=k, strict=True)
    if isinstance(ph, DegenerateBinReport):
        return ph
    values = sample.values
    lo = sample.min - 4.0 * kde_bandwidth
    hi = sample.max + 4.0 * kde_bandwidth
    xs = np.linspace(lo, hi, grid_points)

    hist_heights, hist_edges = np.histogram(values, bins=hist_bins, density=True)

    def step_lookup(edges: np.ndarray, heights: np.ndarray, pts: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(edges, pts, side="right") - 1
        inside = (pts >= edges[0]) & (pts <= edges[-1])
        idx = np.clip(idx, 0, heights.size - 1)
        return np.where(inside, heights[idx], 0.0)

    qrde_y = step_lookup(ph.edges, ph.heights, xs)
    hist_y = step_lookup(hist_edges, hist_heights, xs)
    kde_y = _kde_pdf(values, kde_bandwidth, xs)

    qrde_mass = float(np.sum(ph.heights * np.diff(ph.edges)))
    hist_mass = float(np.sum(hist_heights * np.diff(hist_edges)))
    kde_mass = float(
        (ndtr((hi - values) / kde_bandwidth) - ndtr((lo - values) / kde_bandwidth)).mean()
    )
    return ComparisonResult(
        grid=xs,
        qrde_density=qrde_y,
        kde_density=kde_y,
        hist_density=hist_y,
        qrde_mass=qrde_mass,
        kde_mass=kde_mass,
        hist_mass=hist_mass,
        hf7_median=hf7_quantile(sample, 0.5),
        kde_median=_kde_median(values, kde_bandwidth),
        bandwidth=float(kde_bandwidth),
        histogram=ph,
    )
