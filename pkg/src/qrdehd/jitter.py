"""Deterministic tie spreading at a known measurement resolution.

Tied (or near-tied) runs in the sorted sample are spread apart with fixed
uniform offsets no larger than half the measurement resolution s.  The
offsets depend only on run position, so the result is reproducible:

  * interior runs are centered on the tied value (offsets s*(u - 1/2)),
  * a run at the sample minimum extends only to the right (s*u/2),
  * a run at the sample maximum extends only to the left (s*(u - 1)/2),
  * a fully tied sample is centered, deliberately widening the otherwise
    zero-width range (the one case where the range is extended),

with u the run-local index grid 0, 1/(k-1), ..., 1.  The resolution s must
come from domain knowledge of the measuring device, never from the data.
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .estimators import Sample


class TiedRun(NamedTuple):
    """A maximal run of tied order statistics, 1-based inclusive indices."""

    start: int
    end: int

    @property
    def length(self) -> int:
        return self.end - self.start + 1


def _check_resolution(s: float) -> float:
    if not (math.isfinite(s) and s > 0.0):
        raise ValueError(f"resolution must be positive and finite, got {s!r}")
    return float(s)


def detect_tied_runs(sample: Sample, s: float) -> list[TiedRun]:
    """Greedy left-to-right grouping of values spanning less than s/2.

    Starting at index i, the run is extended while x[j+1] - x[i] < s/2;
    singleton groups are not reported.  Runs are disjoint.
    """
    s = _check_resolution(s)
    x = sample.values
    n = sample.n
    runs: list[TiedRun] = []
    i = 0
    while i < n:
        j = i
        while j + 1 < n and x[j + 1] - x[i] < s / 2.0:
            j += 1
        if j > i:
            runs.append(TiedRun(i + 1, j + 1))
        i = j + 1
    return runs


def jitter(sample: Sample, s: float) -> Sample:
    """Return a sample with every tied run spread apart deterministically.

    Values outside tied runs are untouched; every moved value stays within
    s/2 of its input; ordering and (except for a fully tied sample) the
    sample range are preserved.  Tie-free input comes back unchanged.
    """
    s = _check_resolution(s)
    x = sample.values.copy()
    n = x.size
    for run in detect_tied_runs(sample, s):
        i, j = run.start - 1, run.end - 1
        k = run.length
        u = np.arange(k) / (k - 1)
        if i == 0 and j == n - 1:
            offsets = u - 0.5  # zero-dispersion case: extend both ways
        elif i == 0:
            offsets = u / 2.0
        elif j == n - 1:
            offsets = (u - 1.0) / 2.0
        else:
            offsets = u - 0.5
        x[i : j + 1] += offsets * s
    return Sample(x)
