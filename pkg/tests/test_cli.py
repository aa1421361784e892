import io

import numpy as np
import pytest

from qrdehd.cli import run


def invoke(argv, stdin_text=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdin=io.StringIO(stdin_text), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


TIES = "1\n1.9\n2\n2.1\n3\n"
ROUNDED = "1\n2\n2\n2\n3\n"


class TestQuantileCommand:
    def test_hf7_quartiles(self):
        code, out, _ = invoke(
            ["quantile", "--estimator", "hf7", "--p", "0,0.25,0.5,0.75,1"], TIES
        )
        assert code == 0
        assert out == "p,q\n0,1\n0.25,1.9\n0.5,2\n0.75,2.1\n1,3\n"

    def test_hd_json(self):
        import json

        code, out, _ = invoke(
            ["quantile", "--estimator", "hd", "--p", "0.5", "--format", "json"],
            "1\n2\n3\n5\n8\n",
        )
        assert code == 0
        assert json.loads(out)[0][1] == pytest.approx(3.43328, abs=1e-12)

    def test_thd_default_width(self):
        code, out, _ = invoke(["quantile", "--estimator", "thd", "--p", "0.5"], TIES)
        assert code == 0 and out.startswith("p,q\n0.5,")

    def test_file_input(self, tmp_path):
        path = tmp_path / "sample.txt"
        path.write_text(TIES)
        code, out, _ = invoke(["quantile", str(path), "--estimator", "hf7", "--p", "0.5"])
        assert code == 0 and "0.5,2\n" in out

    def test_bad_probability_list(self):
        code, _, err = invoke(["quantile", "--p", "0.5,oops"], TIES)
        assert code == 2 and "error" in err


class TestDensityCommand:
    def test_degenerate_exit_code_and_report(self):
        code, out, err = invoke(["density", "--estimator", "hf7", "--bins", "4"], ROUNDED)
        assert code == 3
        assert out == ""
        assert "2" in err and "jitter" in err

    def test_success_csv(self):
        code, out, _ = invoke(["density", "--estimator", "hf7", "--bins", "4"], TIES)
        assert code == 0
        assert out.startswith("x,y\n1,0\n")
        assert out.count("\n") == 2 * 4 + 2 + 1  # header + 2k+2 points

    def test_permissive_emits_unbounded_heights(self):
        code, out, _ = invoke(
            ["density", "--estimator", "hf7", "--bins", "4", "--permissive"], ROUNDED
        )
        assert code == 0
        assert "inf" in out and out.startswith("x,y\n")

    def test_probability_trim_window(self):
        code_full, full, _ = invoke(["density", "--bins", "10"], TIES)
        code_trim, trimmed, _ = invoke(
            ["density", "--bins", "10", "--p-lo", "0.1", "--p-hi", "0.9"], TIES
        )
        assert code_full == code_trim == 0
        assert trimmed.count("\n") < full.count("\n")

    def test_svg_output(self):
        code, out, _ = invoke(["density", "--bins", "4", "--format", "svg"], TIES)
        assert code == 0 and out.startswith("<svg")

    def test_figure_file(self, tmp_path):
        fig = tmp_path / "density.png"
        code, _, _ = invoke(["density", "--bins", "4", "--figure", str(fig)], TIES)
        assert code == 0 and fig.stat().st_size > 0


class TestJitterCommand:
    def test_interior_rule(self):
        code, out, _ = invoke(["jitter", "--resolution", "0.1"], ROUNDED)
        assert code == 0
        assert out == "1\n1.95\n2\n2.05\n3\n"

    def test_resolution_required(self):
        code, _, _ = invoke(["jitter"], ROUNDED)
        assert code == 2

    def test_json_round_trip_format(self):
        code, out, _ = invoke(
            ["jitter", "--resolution", "0.1", "--input-format", "json"], "[1,2,2,2,3]"
        )
        assert code == 0 and out.strip() == "[1, 1.95, 2, 2.05, 3]"

    def test_pipeline_fixes_degenerate_density(self):
        code, jittered, _ = invoke(["jitter", "--resolution", "0.1"], ROUNDED)
        assert code == 0
        code2, out, _ = invoke(["density", "--estimator", "hf7", "--bins", "4"], jittered)
        assert code2 == 0 and out.startswith("x,y\n")


class TestCompareCommand:
    def test_summary_and_curves(self):
        rng = np.random.default_rng(81)
        text = "\n".join(str(v) for v in rng.normal(size=30)) + "\n"
        code, out, _ = invoke(["compare", "--bandwidth", "0.9", "--bins", "200"], text)
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("# hf7_median=")
        assert lines[1] == "x,qrde,kde,histogram"
        assert len(lines) > 100

    def test_degenerate_propagates(self):
        code, _, err = invoke(["compare", "--bins", "4"], "5\n5\n5\n5\n5\n")
        assert code == 3 and "degenerate" in err

    def test_figure_file(self, tmp_path):
        fig = tmp_path / "compare.png"
        rng = np.random.default_rng(83)
        text = "\n".join(str(v) for v in rng.normal(size=25)) + "\n"
        code, _, _ = invoke(["compare", "--bins", "100", "--figure", str(fig)], text)
        assert code == 0 and fig.stat().st_size > 0

    def test_json_format(self):
        import json

        rng = np.random.default_rng(85)
        text = "\n".join(str(v) for v in rng.normal(size=20)) + "\n"
        code, out, _ = invoke(["compare", "--bins", "100", "--format", "json"], text)
        assert code == 0
        payload = json.loads(out)
        assert {"hf7_median", "kde_median", "divergence", "curve"} <= payload.keys()


class TestDeterminism:
    def test_identical_invocations_identical_bytes(self):
        argv = ["density", "--bins", "50"]
        assert invoke(argv, TIES) == invoke(argv, TIES)


class TestUsageErrors:
    def test_unknown_command(self):
        code, _, _ = invoke(["frobnicate"])
        assert code == 2

    def test_missing_input_file(self):
        code, _, err = invoke(["quantile", "/no/such/file"])
        assert code == 2 and "error" in err

    def test_parse_error_exit(self):
        code, _, err = invoke(["quantile"], "not-a-number\n")
        assert code == 2 and "not a number" in err
