import json

import pytest

from hhfrac.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv, "--format", "json")
    assert out, err
    return code, json.loads(out)


class TestVerifyCommand:
    def test_t4_bilinear_chain(self, capsys):
        code, rep = run_json(
            capsys, "verify", "--theorem", "t4", "--f", "x*y",
            "--rect", "0", "1", "0", "1", "--alpha", "1", "--beta", "1",
            "--h", "identity",
        )
        assert code == 0
        assert rep["status"] == "pass"
        assert rep["schema_version"] == 1
        r = rep["result"]
        assert r["left"] == pytest.approx(0.25, abs=1e-10)
        assert r["middle"] == pytest.approx(0.25, abs=1e-10)
        assert r["right"] == pytest.approx(0.25, abs=1e-10)
        assert rep["config"]["theorem"] == "t4"

    def test_lemma1_exp(self, capsys):
        code, rep = run_json(
            capsys, "verify", "--theorem", "lemma1", "--f", "exp(x+y)",
            "--rect", "0", "1", "0", "1", "--alpha", "0.5", "--beta", "0.5",
        )
        assert code == 0
        assert rep["result"]["residual"] <= 10.0 * rep["result"]["quadrature_error"]

    def test_failing_inequality_exits_1(self, capsys):
        # concave f: the lower chain member exceeds the middle
        code, rep = run_json(
            capsys, "verify", "--theorem", "t1", "--f", "10 - x^2 - y^2",
            "--rect", "0", "1", "0", "1", "--alpha", "1", "--beta", "1",
        )
        assert code == 1
        assert rep["status"] == "fail"

    def test_divergent_moment_is_reported_error(self, capsys):
        code, rep = run_json(
            capsys, "verify", "--theorem", "t4", "--f", "x*y",
            "--rect", "0", "1", "0", "1", "--alpha", "0.5", "--beta", "0.5",
            "--h", "gl",
        )
        assert code == 1
        assert rep["status"] == "error"
        assert "DivergentMomentError" in rep["error"]

    def test_usage_errors_exit_2(self, capsys):
        # t6 without --p
        code, _, err = run_cli(capsys, "verify", "--theorem", "t6", "--f", "x*y",
                               "--rect", "0", "1", "0", "1",
                               "--alpha", "1", "--beta", "1", "--h", "identity")
        assert code == 2 and "--p" in err
        # h given for a theorem that does not take it
        code, _, err = run_cli(capsys, "verify", "--theorem", "t1", "--f", "x*y",
                               "--rect", "0", "1", "0", "1",
                               "--alpha", "1", "--beta", "1", "--h", "identity")
        assert code == 2
        # malformed expression
        code, _, err = run_cli(capsys, "verify", "--theorem", "t1", "--f", "x +* y",
                               "--rect", "0", "1", "0", "1",
                               "--alpha", "1", "--beta", "1")
        assert code == 2
        # negative rectangle origin violates the theorem hypothesis
        code, _, err = run_cli(capsys, "verify", "--theorem", "t1", "--f", "x*y",
                               "--rect", "-1", "1", "0", "1",
                               "--alpha", "1", "--beta", "1")
        assert code == 2

    def test_config_file(self, capsys, tmp_path):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({
            "theorem": "t4", "f": "x*y", "rect": [0, 1, 0, 1],
            "alpha": 1.0, "beta": 1.0, "h": "identity",
        }))
        code, rep = run_json(capsys, "verify", "--config", str(cfg))
        assert code == 0 and rep["status"] == "pass"
        # flags win over the file
        code, rep = run_json(capsys, "verify", "--config", str(cfg),
                             "--f", "x^2+y^2")
        assert rep["config"]["f"] == "x^2+y^2"


class TestFracIntegrateCommand:
    def test_linear_half_order(self, capsys):
        code, rep = run_json(
            capsys, "frac-integrate", "--f1", "t", "--alpha", "0.5",
            "--side", "left", "--interval", "0", "1", "--at", "1",
        )
        assert code == 0
        assert rep["result"]["value"] == pytest.approx(0.75225277806367, rel=1e-12)

    def test_text_output_contains_value(self, capsys):
        code, out, _ = run_cli(
            capsys, "frac-integrate", "--f1", "t", "--alpha", "0.5",
            "--side", "left", "--interval", "0", "1", "--at", "1",
        )
        assert code == 0
        assert "0.75225277806367" in out

    def test_2d(self, capsys):
        code, rep = run_json(
            capsys, "frac-integrate", "--f", "x*y", "--alpha", "1",
            "--beta", "1", "--corner", "a+c+", "--rect", "0", "1", "0", "1",
            "--at", "1", "1",
        )
        assert code == 0
        assert rep["result"]["value"] == pytest.approx(0.25, rel=1e-12)

    def test_bad_at_is_usage_error(self, capsys):
        code, _, err = run_cli(
            capsys, "frac-integrate", "--f1", "t", "--alpha", "0.5",
            "--side", "left", "--interval", "0", "1", "--at", "2",
        )
        assert code == 2

    def test_requires_exactly_one_function(self, capsys):
        code, _, _ = run_cli(capsys, "frac-integrate", "--alpha", "0.5")
        assert code == 2


class TestCheckHConvexCommand:
    def test_pass(self, capsys):
        code, rep = run_json(
            capsys, "check-hconvex", "--f", "x*y", "--h", "identity",
            "--rect", "0", "1", "0", "1", "--grid", "7",
        )
        assert code == 0
        assert rep["result"]["verdict"] == "pass"
        assert "not a proof" in rep["result"]["message"]

    def test_fail_with_witness(self, capsys):
        code, rep = run_json(
            capsys, "check-hconvex", "--f", "0-x^2-y^2", "--h", "identity",
            "--rect", "0", "1", "0", "1", "--grid", "7",
        )
        assert code == 1
        assert rep["result"]["verdict"] == "fail"
        assert rep["result"]["witness"] is not None


class TestSweepCommand:
    BASE = ("sweep", "--theorem", "t4", "--f", "builtin:powersum:1",
            "--rect", "0", "1", "0", "1", "--h", "power:1",
            "--beta", "1", "--axis", "alpha=0.5,1,2", "--axis", "s=0.5,1",
            "--nodes", "24")

    def test_powersum_sweep_all_pass(self, capsys, tmp_path):
        out = tmp_path / "rows.csv"
        code, _, _ = run_cli(capsys, *self.BASE, "--output", str(out))
        assert code == 0
        lines = out.read_text().strip().split("\n")
        header = lines[0].split(",")
        assert lines[0].startswith("alpha,beta,s,p,theorem,h,function")
        rows = [dict(zip(header, line.split(","))) for line in lines[1:]]
        assert len(rows) == 6
        assert all(r["pass"] == "true" for r in rows)
        # lexicographic order over the axes as given
        assert [(r["alpha"], r["s"]) for r in rows] == [
            ("0.5", "0.5"), ("0.5", "1"), ("1", "0.5"),
            ("1", "1"), ("2", "0.5"), ("2", "1")]

    def test_byte_determinism(self, capsys, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run_cli(capsys, *self.BASE, "--output", str(out1))[0] == 0
        assert run_cli(capsys, *self.BASE, "--jobs", "4",
                       "--output", str(out2))[0] == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_json_determinism(self, capsys, tmp_path):
        out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
        for out in (out1, out2):
            code, _, _ = run_cli(capsys, *self.BASE, "--format", "json",
                                 "--output", str(out))
            assert code == 0
        assert out1.read_bytes() == out2.read_bytes()
        rep = json.loads(out1.read_text())
        assert rep["config"]["axes"]["alpha"] == [0.5, 1, 2]

    def test_empty_axis_list_usage_error(self, capsys):
        code, _, err = run_cli(
            capsys, "sweep", "--theorem", "t4", "--f", "x*y",
            "--rect", "0", "1", "0", "1", "--h", "identity",
            "--alpha", "1", "--beta", "1",
        )
        assert code == 2 and "--axis" in err

    def test_divergent_rows_carry_error_without_aborting(self, capsys, tmp_path):
        # every Godunova-Levin moment diverges, so each row records the
        # divergence in its error column and the sweep still exits 0
        out = tmp_path / "gl.csv"
        code, _, _ = run_cli(
            capsys, "sweep", "--theorem", "t4", "--f", "x*y",
            "--rect", "0", "1", "0", "1", "--h", "gl", "--beta", "1",
            "--axis", "alpha=0.5,1", "--nodes", "24",
            "--output", str(out),
        )
        assert code == 0
        lines = out.read_text().strip().split("\n")
        header = lines[0].split(",")
        for line in lines[1:]:
            row = dict(zip(header, line.split(",")))
            assert "DivergentMomentError" in row["error"]
            assert row["pass"] == ""

    def test_lemma1_sweep_rows(self, capsys, tmp_path):
        out = tmp_path / "ok.csv"
        code, _, _ = run_cli(
            capsys, "sweep", "--theorem", "lemma1", "--f", "exp(x+y)",
            "--rect", "0", "1", "0", "1", "--beta", "1",
            "--axis", "alpha=0.5,1,1.5", "--nodes", "32",
            "--output", str(out),
        )
        assert code == 0
        lines = out.read_text().strip().split("\n")
        assert len(lines) == 4
        header = lines[0].split(",")
        for line in lines[1:]:
            row = dict(zip(header, line.split(",")))
            assert row["pass"] == "true" and row["error"] == ""

    def test_s_axis_requires_power_target(self, capsys):
        code, _, err = run_cli(
            capsys, "sweep", "--theorem", "t1", "--f", "x*y",
            "--rect", "0", "1", "0", "1", "--alpha", "1", "--beta", "1",
            "--axis", "s=0.5",
        )
        assert code == 2 and "powersum" in err


class TestArgparseContract:
    def test_unknown_command_exits_2(self, capsys):
        with pytest.raises(SystemExit) as ei:
            main(["no-such-command"])
        assert ei.value.code == 2
