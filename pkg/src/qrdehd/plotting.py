"""Matplotlib figure rendering for the CLI report paths.

Imported lazily by the CLI so plain text output never pays the matplotlib
startup cost.  Figures are written straight to files via the Agg backend.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .qrde import ComparisonResult, PseudoHistogram


def save_density_figure(ph: PseudoHistogram, path: str, title: str = "QRDE density") -> None:
    """Render the step-outline density curve to an image file."""
    from .dataio import density_curve_points

    points = density_curve_points(ph)
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.plot(xs, ys, color="tab:green", lw=1.2)
    ax.set_xlabel("x")
    ax.set_ylabel("density")
    ax.set_title(title)
    ax.set_ylim(bottom=0)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_comparison_figure(result: ComparisonResult, path: str) -> None:
    """Render the QRDE / KDE / histogram comparison with both medians."""
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.plot(result.grid, result.hist_density, color="0.6", lw=1.0,
            drawstyle="steps-mid", label="equal-width histogram")
    ax.plot(result.grid, result.kde_density, color="tab:red", lw=1.2,
            label=f"Gaussian KDE (bw={result.bandwidth:.4g})")
    ax.plot(result.grid, result.qrde_density, color="tab:green", lw=1.4,
            label="QRDE-HD")
    ax.axvline(result.hf7_median, color="tab:blue", ls="--", lw=1.0,
               label=f"HF7 median = {result.hf7_median:.4g}")
    ax.axvline(result.kde_median, color="tab:red", ls=":", lw=1.0,
               label=f"KDE median = {result.kde_median:.4g}")
    ax.set_xlabel("x")
    ax.set_ylabel("density")
    ax.set_ylim(bottom=0)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
