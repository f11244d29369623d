import json
import subprocess
import sys

import pytest

from vahlen.algebra import CL41, from_json_obj, random_mv
from vahlen.cli import main
from vahlen.suites import SUITE_NAMES, run_suite


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_exit(capsys, *argv):
    """argparse exits through SystemExit for usage errors."""
    try:
        return run(capsys, *argv)
    except SystemExit as exc:
        out = capsys.readouterr()
        return exc.code, out.out, out.err


class TestVerify:
    def test_core(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "core", "--seed", "1")
        assert code == 0 and out.startswith("PASS core")

    def test_bogus_suite(self, capsys):
        code, _, err = run_exit(capsys, "verify", "--suite", "bogus")
        assert code == 2 and "usage" in err

    def test_all_json(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "all", "--json")
        doc = json.loads(out)
        assert code == 0 and doc["pass"]
        assert [s["suite"] for s in doc["suites"]] == list(SUITE_NAMES)
        assert all("wall_time" not in s for s in doc["suites"])

    def test_tight_tolerance_fails(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "iso", "--tol", "1e-6")
        assert code == 1 and "FAIL" in out

    def test_deterministic(self, capsys):
        _, a, _ = run(capsys, "verify", "--suite", "twistor", "--seed", "7", "--json")
        _, b, _ = run(capsys, "verify", "--suite", "twistor", "--seed", "7", "--json")
        assert a == b


def test_suite_report_structure():
    r = run_suite("lie", seed=3)
    assert r.passed == all(c.passed for c in r.checks)
    obj = r.to_json_obj(timing=True)
    assert set(obj) == {"suite", "seed", "pass", "checks", "wall_time"}
    assert set(obj["checks"][0]) == {"name", "residual", "tol", "pass"}
    with pytest.raises(KeyError):
        run_suite("nope")


class TestShowRep:
    def test_dirac_std(self, capsys):
        code, out, _ = run(capsys, "show-rep", "dirac-std")
        lines = out.splitlines()
        assert code == 0 and lines[0] == "γ0 ="
        rows = [l.split("[")[1].split("]")[0].split() for l in lines[1:5]]
        assert rows == [["1", "0", "0", "0"], ["0", "1", "0", "0"],
                        ["0", "0", "-1", "0"], ["0", "0", "0", "-1"]]

    def test_cl30(self, capsys):
        code, out, _ = run(capsys, "show-rep", "cl30")
        assert code == 0
        assert "e2 =\n  [  0  -i ]\n  [  i   0 ]" in out
        assert out.count("=") == 3

    def test_cl13_quaternions(self, capsys):
        code, out, _ = run(capsys, "show-rep", "cl13")
        assert code == 0 and "[ 0  k ]" in out

    def test_json(self, capsys):
        code, out, _ = run(capsys, "show-rep", "dirac-weyl", "--json")
        doc = json.loads(out)
        assert code == 0 and doc[0]["generator"] == "γ0"
        assert doc[0]["matrix"][0][2] == [1.0, 0.0]

    def test_unknown(self, capsys):
        code, _, _ = run_exit(capsys, "show-rep", "nope")
        assert code == 2


class TestApply:
    def test_translation(self, capsys):
        code, out, _ = run(capsys, "apply", "--map", "translation", "--param", "0,1,0,0", "--x", "0,0,0,0")
        doc = json.loads(out)
        assert code == 0 and doc["x_prime"] == [0, 1, 0, 0] and doc["delta"] == 1

    def test_inversion(self, capsys):
        code, out, _ = run(capsys, "apply", "--map", "inversion", "--x", "1,0,0,0")
        doc = json.loads(out)
        assert code == 0 and doc["x_prime"] == [-1, 0, 0, 0]

    def test_rotation_and_dilation(self, capsys):
        code, out, _ = run(capsys, "apply", "--map", "rotation", "--param", "0,0,0,0,0,0.5",
                           "--x", "1,1,0,0")
        doc = json.loads(out)
        # a boost-free rotation about e3 keeps x0 and the spatial length
        assert code == 0 and doc["x_prime"][0] == pytest.approx(1)
        assert sum(v * v for v in doc["x_prime"][1:]) == pytest.approx(1)
        code, out, _ = run(capsys, "apply", "--map", "dilation", "--param", "2", "--x", "1,1,0,0")
        assert json.loads(out)["x_prime"] == pytest.approx([2, 2, 0, 0])

    def test_undefined(self, capsys):
        code, _, err = run(capsys, "apply", "--map", "inversion", "--x", "1,1,0,0")
        assert code == 1 and "invertible" in err

    @pytest.mark.parametrize("argv, field", [
        (["--map", "translation", "--param", "0,1", "--x", "0,0,0,0"], "--param"),
        (["--map", "translation", "--param", "0,1,0,0", "--x", "0,a,0,0"], "--x"),
        (["--map", "dilation", "--param", "-1", "--x", "0,0,0,0"], "--param"),
        (["--map", "inversion", "--param", "1", "--x", "0,0,0,0"], "--param"),
    ])
    def test_parse_errors(self, capsys, argv, field):
        code, _, err = run_exit(capsys, "apply", *argv)
        assert code == 2 and field in err


class TestTwistorCmd:
    def test_output(self, capsys):
        code, out, _ = run(capsys, "twistor", "--x", "1,0,0,0", "--xi", "1,0,0,0")
        doc = json.loads(out)
        assert code == 0
        assert doc["components"] == [[0, 1], [0, 0], [1, 0], [0, 0]]
        assert doc["penrose_residual"] == 0

    def test_bad_xi(self, capsys):
        code, _, err = run_exit(capsys, "twistor", "--x", "1,0,0,0", "--xi", "1,0")
        assert code == 2 and "--xi" in err


class TestMvIo:
    def test_random_round_trip(self, capsys, tmp_path):
        code, out, _ = run(capsys, "mv-io", "--random", "4,1", "--seed", "5", "--complex")
        assert code == 0
        p = tmp_path / "mv.json"
        p.write_text(out)
        code, again, _ = run(capsys, "mv-io", "--input", str(p))
        assert code == 0 and again == out
        a = from_json_obj(json.loads(out))
        assert (a - random_mv(5, CL41.sig, range(6), True)).max_abs() <= 1e-14

    def test_bad_json_field(self, capsys, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text('{"sig": [4, 1], "coeffs": [[99, 1, 0]]}')
        code, _, err = run(capsys, "mv-io", "--input", str(p))
        assert code == 2 and "coeffs[0]" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "mv-io", "--input", str(tmp_path / "none.json"))
        assert code == 2 and "--input" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "vahlen", "show-rep", "cl30"],
                          capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0 and "e1 =" in proc.stdout
