"""Quantile-respectful density estimation toolkit.

Builds smooth density estimates that are exactly consistent with the
Harrell-Davis quantile estimator, plus the trimmed (robust) variant, the
traditional Hyndman-Fan type 7 estimator, and deterministic jittering for
tied values.
"""
from .estimators import (
    HarrellDavis,
    HyndmanFan7,
    Sample,
    TrimmedHarrellDavis,
    hd_quantile,
    hd_weights,
    hf7_quantile,
    quantile_curve,
    thd_quantile,
)
from .jitter import TiedRun, detect_tied_runs, jitter
from .qrde import (
    ComparisonResult,
    DegenerateBinReport,
    PseudoHistogram,
    build_qrde,
    cdf_at,
    compare_estimates,
    density_at,
    quantile_of_qrde,
    silverman_bandwidth,
)
from .special import BetaParams, NumericalError, log_beta, reg_inc_beta

__version__ = "0.1.0"

__all__ = [
    "BetaParams",
    "ComparisonResult",
    "DegenerateBinReport",
    "HarrellDavis",
    "HyndmanFan7",
    "NumericalError",
    "PseudoHistogram",
    "Sample",
    "TiedRun",
    "TrimmedHarrellDavis",
    "build_qrde",
    "cdf_at",
    "compare_estimates",
    "density_at",
    "detect_tied_runs",
    "hd_quantile",
    "hd_weights",
    "hf7_quantile",
    "jitter",
    "log_beta",
    "quantile_curve",
    "quantile_of_qrde",
    "reg_inc_beta",
    "silverman_bandwidth",
    "thd_quantile",
]
