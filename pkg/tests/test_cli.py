"""Command-line front end: outputs, exit codes and determinism."""
import io
import json
import subprocess
import sys

import pytest

from dihedral.algebra import Poly, poly_from_json
from dihedral.cli import run
from dihedral.klein import KleinCovering


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_theta_json():
    code, out, _ = call("theta", "--n", "3", "--format", "json")
    assert code == 0
    assert out.strip() == '{"n":3,"theta1":["1","3"],"theta2":["3","1"]}'


def test_format_before_subcommand():
    assert call("--format", "json", "theta", "--n", "3")[1] == call("theta", "--n", "3", "--format", "json")[1]


def test_klein_worked_example():
    code, out, _ = call("klein", "--k", "1", "--l", "0", "--m", "2", "--n", "1", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["degree"] == 3 and doc["certified"] is True
    assert doc["C"] == "256/81"


def test_klein_json_round_trip():
    _, out, _ = call("klein", "--k", "2", "--l", "1", "--m", "3", "--n", "2", "--format", "json")
    doc = json.loads(out)
    assert KleinCovering.from_json(doc).certified == doc["certified"]


def test_verify_dhtrb():
    code, out, _ = call("verify", "--id", "dhtrb", "--n", "4")
    assert code == 0 and "verified (exact)" in out


def test_verify_echoes_order():
    code, out, _ = call("verify", "--id", "euler", "--order", "8", "--format", "json")
    assert code == 0 and json.loads(out)["order"] == 8


def test_verify_all_small_grid():
    code, out, _ = call("verify", "--all", "--grid", "small")
    assert code == 0 and out.strip().endswith("all passed")


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["theta"],
    ["theta", "--n", "3", "--bogus"],
    ["verify", "--id", "nope"],
    ["verify", "--id", "dhtrb", "--k", "1"],
    ["theta", "--n", "0"],
])
def test_usage_errors_exit_2(argv):
    code, _, err = call(*argv)
    assert code == 2 and err


def test_verification_failure_exits_1():
    code, out, _ = call("ode", "--relation", "diffpsi", "--k", "1", "--l", "1", "--m", "3", "--n", "2",
                        "--printed")
    assert code == 1 and "nonzero residual" in out


def test_ode_pass():
    code, out, _ = call("ode", "--relation", "rsqeq", "--k", "1", "--l", "1", "--m", "3", "--n", "2")
    assert code == 0 and "residual 0" in out


def test_dih_4f3_variants_agree():
    code, out, _ = call("dih", "--k", "1", "--l", "0", "--m", "2", "--n", "1", "--form", "4f3",
                        "--format", "json")
    assert code == 0 and json.loads(out)["agree"] is True


def test_psi_and_phi():
    assert call("psi", "--k", "1", "--l", "0", "--m", "2", "--n", "1", "--format", "json")[0] == 0
    code, out, _ = call("phi", "--n", "3", "--format", "json")
    doc = json.loads(out)
    num, den = (poly_from_json(doc[key]) for key in ("numerator", "denominator"))
    x = Poly.gen("x")
    assert code == 0 and num * (1 + 3 * x) ** 2 == den * x * (3 + x) ** 2


def test_deterministic_output():
    argv = ["klein", "--k", "1", "--l", "1", "--m", "3", "--n", "4", "--format", "json"]
    assert call(*argv)[1] == call(*argv)[1]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "dihedral", "theta", "--n", "2", "--format", "json"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["theta2"] == ["2"]
