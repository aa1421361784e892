import io

import numpy as np
import pytest

from qrdehd import HyndmanFan7, Sample, build_qrde
from qrdehd.dataio import (
    SampleParseError,
    density_curve_points,
    format_number,
    read_sample,
    write_density_curve,
    write_quantiles,
    write_sample,
)


@pytest.fixture(scope="module")
def two_bin_hist():
    return build_qrde(Sample([0.0, 1.0]), HyndmanFan7(), k=2)


class TestReadSample:
    def test_plain(self):
        assert read_sample("1\n2\n3\n", "plain").values.tolist() == [1, 2, 3]

    def test_plain_from_stream(self):
        assert read_sample(io.StringIO("2\n1\n"), "plain").values.tolist() == [1, 2]

    def test_csv_with_header_sorts(self):
        assert read_sample("x\n3\n1\n2\n", "csv").values.tolist() == [1, 2, 3]

    def test_csv_without_header(self):
        assert read_sample("3\n1\n", "csv").values.tolist() == [1, 3]

    def test_json(self):
        assert read_sample("[3, 1, 2.5]", "json").values.tolist() == [1, 2.5, 3]

    def test_json_overflow_rejected(self):
        with pytest.raises(SampleParseError):
            read_sample("[1, 1e400]", "json")

    def test_json_nan_token_rejected(self):
        with pytest.raises(SampleParseError):
            read_sample("[1, NaN]", "json")

    def test_empty_input(self):
        for fmt, text in (("plain", ""), ("csv", ""), ("json", "[]")):
            with pytest.raises(SampleParseError):
                read_sample(text, fmt)

    def test_bad_token_reports_line(self):
        with pytest.raises(SampleParseError, match="line 2"):
            read_sample("1\nfoo\n", "plain")

    def test_bytes_input(self):
        assert read_sample(b"1\n2\n", "plain").n == 2

    def test_round_trip_plain(self):
        rng = np.random.default_rng(71)
        s = Sample(rng.normal(size=50))
        again = read_sample(write_sample(s, "plain"), "plain")
        assert np.array_equal(again.values, s.values)

    def test_round_trip_csv_json(self):
        s = Sample([0.1, -2.5, 3.0])
        for fmt in ("csv", "json"):
            again = read_sample(write_sample(s, fmt), fmt)
            assert np.array_equal(again.values, s.values)


class TestDensityCurve:
    def test_two_bin_layout(self, two_bin_hist):
        assert density_curve_points(two_bin_hist) == [
            (0.0, 0.0),
            (0.0, 1.0),
            (0.5, 1.0),
            (0.5, 1.0),
            (1.0, 1.0),
            (1.0, 0.0),
        ]

    def test_single_bin_layout(self):
        ph = build_qrde(Sample([0.0, 1.0]), HyndmanFan7(), k=1)
        assert density_curve_points(ph) == [(0, 0), (0, 1), (1, 1), (1, 0)]

    def test_point_count_and_zero_caps(self):
        rng = np.random.default_rng(73)
        ph = build_qrde(Sample(rng.normal(size=30)), HyndmanFan7(), k=17)
        points = density_curve_points(ph)
        assert len(points) == 2 * 17 + 2
        assert points[0][1] == 0.0 and points[-1][1] == 0.0

    def test_csv_export(self, two_bin_hist):
        out = write_density_curve(two_bin_hist, "csv")
        assert out == "x,y\n0,0\n0,1\n0.5,1\n0.5,1\n1,1\n1,0\n"

    def test_json_export(self, two_bin_hist):
        import json

        pairs = json.loads(write_density_curve(two_bin_hist, "json"))
        assert pairs == [[0, 0], [0, 1], [0.5, 1], [0.5, 1], [1, 1], [1, 0]]

    def test_svg_export(self, two_bin_hist):
        svg = write_density_curve(two_bin_hist, "svg")
        assert svg.startswith("<svg")
        assert "<polyline" in svg and svg.rstrip().endswith("</svg>")

    def test_degenerate_rejected(self):
        ph = build_qrde(Sample([1, 2, 2, 2, 3]), HyndmanFan7(), k=4, strict=False)
        with pytest.raises(ValueError):
            write_density_curve(ph, "csv")


class TestWriteQuantiles:
    def test_csv(self):
        assert write_quantiles([0.5], [2.0], "csv") == "p,q\n0.5,2\n"

    def test_json(self):
        import json

        assert json.loads(write_quantiles([0, 1], [1, 3], "json")) == [[0, 1], [1, 3]]

    def test_empty(self):
        assert write_quantiles([], [], "csv") == "p,q\n"

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            write_quantiles([0.5], [1.0, 2.0], "csv")


class TestFormatNumber:
    def test_shortest_round_trip(self):
        for v in (0.1, 1 / 3, 1e-17, 12345.6789, -0.25):
            assert float(format_number(v)) == v

    def test_integral_floats_bare(self):
        assert format_number(2.0) == "2"
        assert format_number(-10.0) == "-10"
