import json

import pytest

from jacobilt.cli import main
from jacobilt.operators import dump_instance, make_perturbation


@pytest.fixture
def site_file(tmp_path):
    path = tmp_path / "site15.json"
    path.write_text(dump_instance(make_perturbation(0, [], 0, [1.5])))
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


class TestSpectrum:
    def test_json_output(self, capsys, site_file):
        code, out, _ = run(capsys, "spectrum", site_file, "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["instance_id"] == "site15"
        assert doc["e_plus"][0] == pytest.approx(2.5, abs=1e-9)
        assert doc["e_minus"] == []

    def test_csv_output(self, capsys, site_file):
        code, out, _ = run(capsys, "spectrum", site_file)
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "instance_id,side,index,energy,n_used,est_error"
        assert lines[1].startswith("site15,plus,1,2.5")

    def test_malformed_file_exits_2(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{nope")
        code, _, err = run(capsys, "spectrum", bad)
        assert code == 2
        assert "instance file" in err

    def test_missing_file_exits_2(self, capsys, tmp_path):
        code, _, _ = run(capsys, "spectrum", tmp_path / "none.json")
        assert code == 2

    def test_half_width_flag(self, capsys, site_file):
        code, out, _ = run(capsys, "spectrum", site_file, "--half-width", "100",
                           "--format", "json")
        assert code == 0
        assert json.loads(out)["n_used"] >= 200

    def test_unconverged_near_edge_exits_3_with_partial(self, capsys, tmp_path):
        # bound state 1.6e-7 above the edge: outside the default truncation reach
        path = tmp_path / "shallow.json"
        path.write_text(dump_instance(make_perturbation(0, [], 0, [0.0008])))
        code, out, err = run(capsys, "spectrum", path)
        assert code == 3
        assert "no convergence" in err
        assert "shallow,plus,1,2.0000001" in out


class TestVerify:
    def test_instance_file_passes(self, capsys, site_file):
        code, out, _ = run(capsys, "verify", site_file)
        assert code == 0
        assert "site15,eq2," in out

    def test_random_deterministic(self, capsys):
        args = ("verify", "--random", "4", "--seed", "7", "--gamma", "1.5")
        code1, out1, _ = run(capsys, *args)
        code2, out2, _ = run(capsys, *args)
        assert code1 == code2 == 0
        assert out1 == out2
        assert "rnd7-0000" in out1

    def test_negative_tolerance_forces_failure_exit(self, capsys, site_file):
        code, out, _ = run(capsys, "verify", site_file, "--tol", "-1")
        assert code == 1
        assert "false" in out  # reports still emitted

    def test_no_instances_is_usage_error(self, capsys):
        code, _, err = run(capsys, "verify")
        assert code == 2
        assert "no instances" in err

    def test_out_file(self, capsys, tmp_path, site_file):
        target = tmp_path / "report.csv"
        code, out, _ = run(capsys, "verify", site_file, "--out", target)
        assert code == 0
        assert out == ""
        assert target.read_text().startswith("instance_id,")

    def test_json_format(self, capsys, site_file):
        code, out, _ = run(capsys, "verify", site_file, "--format", "json")
        assert code == 0
        docs = json.loads(out)
        assert any(d["inequality"] == "eq4_plus" for d in docs)


class TestSharpness:
    def test_default_bond_grid(self, capsys):
        code, out, _ = run(capsys, "sharpness", "--mode", "bond")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "a,lhs,rhs,ratio"
        assert len(lines) == 11
        ratios = [float(line.split(",")[3]) for line in lines[1:]]
        assert all(x < y for x, y in zip(ratios, ratios[1:]))

    def test_site_mode(self, capsys):
        code, out, _ = run(capsys, "sharpness", "--mode", "site", "--grid", "1.5")
        assert code == 0
        row = out.strip().split("\n")[1].split(",")
        assert float(row[3]) == pytest.approx(1.0, abs=1e-8)

    def test_bad_grid_exits_2(self, capsys):
        code, _, _ = run(capsys, "sharpness", "--mode", "bond", "--grid", "0.5")
        assert code == 2


class TestConstructs:
    def test_gmu_suite(self, capsys):
        code, out, _ = run(capsys, "constructs", "--suite", "gmu")
        assert code == 0
        assert "fourier_coefficients" in out
        assert ",true," in out

    def test_json(self, capsys):
        code, out, _ = run(capsys, "constructs", "--suite", "decomposition",
                           "--format", "json")
        assert code == 0
        rows = json.loads(out)
        assert all(row["pass"] for row in rows)


class TestSweep:
    def test_gamma_below_half_exits_2(self, capsys, site_file):
        code, _, _ = run(capsys, "sweep", site_file, "--gamma-range", "0.4,1.5")
        assert code == 2

    def test_sweep_rows(self, capsys, site_file):
        code, out, _ = run(capsys, "sweep", site_file, "--gamma-range", "0.75,1.5")
        assert code == 0
        assert "remark_gamma," in out
        assert "remark_gamma_half," in out
        assert "eq3_report,1.5" in out

    def test_random_sweep(self, capsys):
        code, out, _ = run(
            capsys, "sweep", "--random", "2", "--seed", "3",
            "--gamma-range", "1.5", "--a-range", "0,1", "--no-negative-b",
        )
        assert code == 0
        assert out.count("eq4_plus") == 2


class TestUsage:
    def test_no_command(self, capsys):
        assert main([]) == 2

    def test_unknown_command(self, capsys):
        assert main(["frobnicate"]) == 2
