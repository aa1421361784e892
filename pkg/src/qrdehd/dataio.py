"""Sample ingestion and delimited/SVG export.

Density curves are serialized as a step outline: every bin edge appears
twice on the x axis, every height twice on the y axis, and the outline is
capped with zeros at both ends, so a k-bin histogram becomes 2k + 2 points
that plot directly as a closed step curve.  Numbers are written with the
shortest decimal representation that round-trips, so outputs are
deterministic and diff-friendly.
"""
from __future__ import annotations

import csv
import io
import json
import math
from typing import IO, Sequence, Union

import numpy as np

from .estimators import Sample
from .qrde import PseudoHistogram

SAMPLE_FORMATS = ("plain", "csv", "json")
CURVE_FORMATS = ("csv", "json", "svg")
TABLE_FORMATS = ("csv", "json")

_SVG_WIDTH = 640
_SVG_HEIGHT = 400
_SVG_MARGIN = 50


class SampleParseError(ValueError):
    """Input text could not be parsed into a valid sample."""


def format_number(v: float) -> str:
    """Shortest round-trip decimal, with integral floats written bare."""
    s = repr(float(v))
    return s[:-2] if s.endswith(".0") else s


def _as_text(source: Union[str, bytes, IO]) -> str:
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    return source


def _require_finite_number(token: str, where: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise SampleParseError(f"{where}: not a number: {token!r}") from None
    if not math.isfinite(value):
        raise SampleParseError(f"{where}: non-finite value: {token!r}")
    return value


def read_sample(source: Union[str, bytes, IO], format: str = "plain") -> Sample:
    """Parse a sample from plain lines, a one-column CSV, or a JSON array.

    The result is sorted; the original ordering is not retained.
    """
    if format not in SAMPLE_FORMATS:
        raise ValueError(f"unknown sample format {format!r}")
    text = _as_text(source)
    values: list[float] = []
    if format == "plain":
        for lineno, line in enumerate(text.splitlines(), start=1):
            token = line.strip()
            if not token:
                continue
            values.append(_require_finite_number(token, f"line {lineno}"))
    elif format == "csv":
        rows = list(csv.reader(io.StringIO(text)))
        start = 0
        if rows and rows[0] and rows[0][0].strip().lower() == "x":
            start = 1
        for lineno, row in enumerate(rows[start:], start=start + 1):
            if not row or not row[0].strip():
                continue
            if len([c for c in row if c.strip()]) > 1:
                raise SampleParseError(f"line {lineno}: expected a single column")
            values.append(_require_finite_number(row[0].strip(), f"line {lineno}"))
    else:  # json
        def reject_constant(token: str) -> float:
            raise SampleParseError(f"non-finite JSON constant: {token}")

        try:
            payload = json.loads(text, parse_constant=reject_constant)
        except json.JSONDecodeError as exc:
            raise SampleParseError(f"invalid JSON at position {exc.pos}: {exc.msg}") from None
        if not isinstance(payload, list):
            raise SampleParseError("JSON sample must be a flat array of numbers")
        for idx, item in enumerate(payload):
            if isinstance(item, bool) or not isinstance(item, (int, float)):
                raise SampleParseError(f"element {idx}: not a number: {item!r}")
            if not math.isfinite(item):
                raise SampleParseError(f"element {idx}: non-finite value")
            values.append(float(item))
    if not values:
        raise SampleParseError("empty input: no sample values found")
    return Sample(values)


def write_sample(sample: Sample, format: str = "plain") -> str:
    """Serialize a (sorted) sample in any of the readable formats."""
    if format not in SAMPLE_FORMATS:
        raise ValueError(f"unknown sample format {format!r}")
    if format == "plain":
        return "".join(format_number(v) + "\n" for v in sample.values)
    if format == "csv":
        return "x\n" + "".join(format_number(v) + "\n" for v in sample.values)
    return "[" + ", ".join(format_number(v) for v in sample.values) + "]\n"


def density_curve_points(ph: PseudoHistogram) -> list[tuple[float, float]]:
    """Step outline of the pseudo-histogram: 2k + 2 (x, y) points."""
    xs = np.repeat(ph.edges, 2)
    ys = np.concatenate(([0.0], np.repeat(ph.heights, 2), [0.0]))
    return list(zip(xs.tolist(), ys.tolist()))


def _svg_curve(points: Sequence[tuple[float, float]]) -> str:
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    x_min, x_max = min(xs), max(xs)
    y_min, y_max = 0.0, max(ys)
    x_span = (x_max - x_min) or 1.0
    y_span = (y_max - y_min) or 1.0
    plot_w = _SVG_WIDTH - 2 * _SVG_MARGIN
    plot_h = _SVG_HEIGHT - 2 * _SVG_MARGIN

    def sx(x: float) -> float:
        return _SVG_MARGIN + (x - x_min) / x_span * plot_w

    def sy(y: float) -> float:
        return _SVG_HEIGHT - _SVG_MARGIN - (y - y_min) / y_span * plot_h

    pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in points)
    left, right, bottom, top = (
        _SVG_MARGIN,
        _SVG_WIDTH - _SVG_MARGIN,
        _SVG_HEIGHT - _SVG_MARGIN,
        _SVG_MARGIN,
    )
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="0 0 {_SVG_WIDTH} {_SVG_HEIGHT}">\n'
        f'<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>\n'
        f'<line x1="{left}" y1="{bottom}" x2="{left}" y2="{top}" stroke="black"/>\n'
        f'<text x="{left}" y="{bottom + 20}" font-size="12">{format_number(x_min)}</text>\n'
        f'<text x="{right}" y="{bottom + 20}" font-size="12" text-anchor="end">'
        f"{format_number(x_max)}</text>\n"
        f'<text x="{left - 8}" y="{bottom}" font-size="12" text-anchor="end">0</text>\n'
        f'<text x="{left - 8}" y="{top + 4}" font-size="12" text-anchor="end">'
        f"{format_number(y_max)}</text>\n"
        f'<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{pts}"/>\n'
        "</svg>\n"
    )


def write_density_curve(ph: PseudoHistogram, format: str = "csv") -> str:
    """Serialize the density step curve as CSV, JSON pairs, or minimal SVG."""
    if format not in CURVE_FORMATS:
        raise ValueError(f"unknown curve format {format!r}")
    if ph.is_degenerate:
        raise ValueError("cannot export a degenerate pseudo-histogram")
    points = density_curve_points(ph)
    if format == "csv":
        return "x,y\n" + "".join(
            f"{format_number(x)},{format_number(y)}\n" for x, y in points
        )
    if format == "json":
        return (
            "["
            + ", ".join(f"[{format_number(x)}, {format_number(y)}]" for x, y in points)
            + "]\n"
        )
    return _svg_curve(points)


def write_quantiles(
    ps: Sequence[float], qs: Sequence[float], format: str = "csv"
) -> str:
    """Serialize (p, q) pairs in input order."""
    if format not in TABLE_FORMATS:
        raise ValueError(f"unknown table format {format!r}")
    if len(ps) != len(qs):
        raise ValueError(f"length mismatch: {len(ps)} probabilities, {len(qs)} quantiles")
    if format == "csv":
        return "p,q\n" + "".join(
            f"{format_number(p)},{format_number(q)}\n" for p, q in zip(ps, qs)
        )
    return (
        "["
        + ", ".join(f"[{format_number(p)}, {format_number(q)}]" for p, q in zip(ps, qs))
        + "]\n"
    )
