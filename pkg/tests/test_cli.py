import json

import pytest

from qtwist.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestTau:
    def test_table_output(self, capsys):
        code, out, _ = run(capsys, "tau", "--n-max", "50", "--show", "5")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "1,1" and lines[1] == "2,-24"
        assert len(lines) == 5


class TestGauss:
    def test_json_fields(self, capsys):
        code, out, _ = run(capsys, "gauss", "--k", "1", "--n", "5")
        assert code == 0
        d = json.loads(out)
        assert d["coeff"] == 1 and d["radicand"] == 5
        assert abs(d["value"] - d["brute_re"]) < 1e-9


class TestLValue:
    def test_single_value(self, capsys):
        code, out, _ = run(capsys, "lvalue", "--d", "5", "--tol", "1e-6")
        assert code == 0
        d = json.loads(out)
        assert d["d"] == 5 and d["tail_bound"] < 1e-6
        assert d["value"] > 0


class TestCharsum:
    def test_query(self, capsys):
        code, out, _ = run(capsys, "charsum", "--m", "20", "--n", "50")
        assert code == 0
        d = json.loads(out)
        assert d["value"] >= 0 and d["ratio"] >= 0


class TestMoments:
    def test_raw_json(self, capsys):
        code, out, _ = run(capsys, "moments", "--x", "500", "--format",
                           "json")
        assert code == 0
        rows = json.loads(out)
        assert rows[0]["d_count"] > 0

    def test_csv_format(self, capsys):
        code, out, _ = run(capsys, "moments", "--x", "500", "--format", "csv")
        assert code == 0
        assert out.splitlines()[0].startswith("X,")


class TestVerify:
    def test_fast_suites_pass(self, capsys):
        code, out, _ = run(capsys, "verify", "kernels", "poisson")
        assert code == 0
        assert "0 failure(s)" in out


class TestErrors:
    def test_unknown_subcommand_exit_2(self, capsys):
        assert run(capsys, "bogus")[0] == 2

    def test_bad_value_exit_2(self, capsys):
        code, _, err = run(capsys, "lvalue", "--d", "4")
        assert code == 2 and "error:" in err

    def test_missing_required_exit_2(self, capsys):
        assert run(capsys, "gauss", "--k", "1")[0] == 2
