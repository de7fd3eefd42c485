import json
import subprocess
import sys

import pytest

from polyexpand import cli
from polyexpand.errors import PrecisionExhausted


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestDecompose:
    def test_additive_only(self, capsys):
        code, out, _ = run(capsys, "decompose", "(x^2+y^3)^2")
        assert code == 0
        assert out.splitlines() == ["additive: f=z^2, u=x^2, v=y^3", "multiplicative: none"]

    def test_tree(self, capsys):
        code, out, _ = run(capsys, "decompose", "x^2*y^2 + 2*x*y + 1", "--format", "tree")
        tree = json.loads(out)
        assert code == 0 and set(tree) == {"input", "additive", "multiplicative"}
        assert tree["additive"] is None
        assert tree["multiplicative"] == {"f": "z^2 + 2*z + 1", "u": "x", "v": "y"}

    def test_global_flag_before_command(self, capsys):
        code, out, _ = run(capsys, "--format", "tree", "decompose", "x+y")
        assert code == 0 and json.loads(out)["additive"]["f"] == "z"


class TestClassify:
    def test_sum_product(self, capsys):
        code, out, _ = run(capsys, "classify", "x+y", "x*y")
        assert code == 0 and out.splitlines() == ["verdict: ExpandingCandidate"]

    def test_trivial_dependence(self, capsys):
        code, out, err = run(capsys, "classify", "x+y", "x")
        assert code == 2 and out == ""
        assert "depend" in err

    def test_certificate_printed_and_verified(self, capsys):
        code, out, _ = run(capsys, "classify", "x^2*y^2+2*x*y+1", "x^4*y^2")
        assert code == 0
        assert out.splitlines()[0] == "verdict: MultiplicativePair"
        assert out.splitlines()[-1] == "certificate: verified"

    def test_symmetric_tree(self, capsys):
        code, out, _ = run(capsys, "classify", "x^2+y^2", "3*x^2+5*y^2+1", "--symmetric", "--format", "tree")
        tree = json.loads(out)
        assert code == 0 and tree["verdict"] == "AdditivePair"
        assert tree["certificate"]["u"] == tree["certificate"]["v"].replace("y", "x")

    def test_single(self, capsys):
        code, out, _ = run(capsys, "classify", "--single", "(x+y)^3")
        assert code == 0 and out.startswith("verdict: AdditivePair")

    def test_wrong_arity(self, capsys):
        assert run(capsys, "classify", "x+y")[0] == 1
        assert run(capsys, "classify", "--single", "x+y", "x*y")[0] == 1

    def test_failed_verification_is_internal(self, capsys, monkeypatch):
        monkeypatch.setattr(cli, "verify_certificate", lambda *a: False)
        code, out, err = run(capsys, "classify", "x+y", "x+2*y")
        assert code == 4 and out == "" and "verification" in err


class TestErrors:
    def test_parse_error(self, capsys):
        code, _, err = run(capsys, "decompose", "x^")
        assert code == 1 and "offset 2" in err

    def test_implicit_multiplication(self, capsys):
        assert run(capsys, "decompose", "2x")[0] == 1

    def test_unknown_command(self, capsys):
        assert run(capsys, "frobnicate")[0] == 1

    def test_bad_grid(self, capsys):
        assert run(capsys, "scatter", "x+y", "x*y", "--grid", "5..1")[0] == 1

    def test_precision_exhausted(self, capsys, monkeypatch):
        def boom(*a, **k):
            raise PrecisionExhausted("no stable count")
        monkeypatch.setattr(cli, "run_series", boom)
        code, _, err = run(capsys, "expand", "x+y", "x*y", "--family", "ap", "--n", "2^2..2^4")
        assert code == 3 and "precision" in err

    def test_degenerate_values_reported(self, capsys):
        # b = 0 makes both sections of x*y constant
        code, out, _ = run(capsys, "scatter", "x*y", "x*y", "--grid", "0..0")
        assert code == 0 and "# excluded b1=0" in out and "# excluded b2=0" in out


class TestScatter:
    def test_table(self, capsys):
        code, out, _ = run(capsys, "scatter", "x+y", "x*y", "--grid", "1..4")
        lines = out.splitlines()
        assert code == 0 and lines[0] == "b1\tb2\tcount"
        assert len(lines) == 1 + 16 + 1
        assert all(l.endswith("\t0") for l in lines[1:-1])

    def test_tree(self, capsys):
        code, out, _ = run(capsys, "scatter", "x+y", "x+y", "--grid", "1..4", "--format", "tree")
        tree = json.loads(out)
        assert code == 0 and tree["verdict"]["scattered_on_grid"] is False
        assert tree["verdict"]["max_count"] >= 3


class TestExpand:
    def test_csv_to_stdout(self, capsys):
        code, out, _ = run(capsys, "expand", "x+y", "x*y", "--family", "ap", "--n", "2^2..2^5")
        lines = out.splitlines()
        assert code == 0 and lines[0] == "n,card_P,card_Q,max,family"
        assert lines[1].startswith("4,7,")

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "series.csv"
        code, out, _ = run(capsys, "expand", "(x+y)^2", "x+2*y", "--family", "witness",
                           "--n", "4,8,16", "--out", str(path))
        assert code == 0 and f"wrote: {path}" in out
        rows = path.read_text().splitlines()
        assert len(rows) == 5 and rows[1].endswith("WitnessAdditive")

    def test_witness_needs_pair(self, capsys):
        assert run(capsys, "expand", "x+y", "x*y", "--family", "witness", "--n", "4,8,16")[0] == 2

    def test_seeded_determinism(self, capsys):
        argv = ["expand", "x+y", "x*y", "--family", "random", "--n", "8,16,32", "--seed", "11"]
        first = run(capsys, *argv)
        assert first == run(capsys, *argv)
        other = run(capsys, *argv[:-1], "12")
        assert other[1] != first[1]


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "polyexpand", "classify", "x+y", "x*y", "--format", "tree"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0
    assert json.loads(r.stdout)["verdict"] == "ExpandingCandidate"
