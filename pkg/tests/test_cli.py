import subprocess
import sys
from pathlib import Path

import pytest

from graphprod.cli import main

INSTANCES = Path(__file__).resolve().parent.parent / "instances"
EXC = str(INSTANCES / "exceptional_center.gp")
ZZ = str(INSTANCES / "free_z_z.gp")
PAIR = str(INSTANCES / "z2_pair.gp")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_reduce_to_identity(capsys):
    assert run(capsys, "reduce", PAIR, "a:1", "a:1") == (0, "1\n", "")


def test_reduce_commutes_through_an_edge(capsys):
    code, out, _ = run(capsys, "reduce", PAIR, "a:1 b:1 a:1 c:1 c:2")
    assert code == 0 and out == "b:1\n"


def test_decompose_and_project(capsys):
    code, out, _ = run(capsys, "decompose", PAIR, "c:1 a:1 c:2")
    assert code == 0
    assert out.splitlines()[0] == "w1: c:1" and "csp: a" in out
    code, out, _ = run(capsys, "project", PAIR, "c:1 a:1 b:1", "--onto", "a", "b")
    assert out == "a:1 b:1\n"


def test_classify_restricted_expectation(capsys):
    code, out, _ = run(capsys, "classify", EXC, "--mode", "not-ch")
    assert code == 0
    assert "restricted verdict: DoesNotAdmit" in out
    assert "A5: v0" in out
    fail = [line for line in out.splitlines() if "FAIL" in line]
    assert fail and all("(rule: " in line for line in fail)
    assert run(capsys, "classify", EXC, "--mode", "not-ch", "--restricted", "--expect")[0] == 1
    assert run(capsys, "classify", EXC, "--mode", "ch", "--restricted", "--expect")[0] == 0


def test_classify_query(capsys):
    code, out, _ = run(capsys, "classify", EXC, "--mode", "not-ch", "--query-b", "C", "--expect")
    assert code == 1 and "verdict: DoesNotAdmit" in out
    code, _, err = run(capsys, "classify", EXC, "--mode", "not-ch", "--query-b", "v0")
    assert code == 2 and err.startswith("error: ")


def test_abelian_report(capsys):
    code, out, _ = run(capsys, "abelian", EXC, "--mode", "not-ch", "--n", "2", "--expect")
    assert code == 1
    assert "vertex: C" in out and "tor_2:" in out


def test_equations_sweep(capsys):
    code, out, _ = run(capsys, "equations", ZZ, "--kstar", "2", "--maxlen", "3", "--expect")
    assert code == 0
    assert "violations: 0" in out.splitlines()


def test_equations_bad_h_length(capsys):
    code, _, err = run(capsys, "equations", ZZ, "--kstar", "2", "--h", "1", "2")
    assert code == 2 and "4 elements" in err


def test_omega_search(capsys):
    code, out, _ = run(capsys, "equations", ZZ, "--depth", "1", "--maxlen", "2", "--expect")
    assert code == 0 and "status: none" in out


def test_descend_is_deterministic(capsys):
    args = ("equations", ZZ, "--maxlen", "1", "--descend", "40", "--seed", "5")
    a, b = run(capsys, *args), run(capsys, *args)
    assert a == b and "descending failures: 0" in a[1]


@pytest.mark.parametrize("argv", [
    ["reduce", PAIR, "a:1", "--frob"],
    ["classify", EXC],
    ["classify", EXC, "--mode", "maybe"],
    ["nosuch"],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    assert "usage:" in capsys.readouterr().err


def test_input_errors_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.gp"
    bad.write_text("vertex a\nedge a a\n")
    code, _, err = run(capsys, "reduce", str(bad), "1")
    assert code == 2 and "line 2" in err
    assert run(capsys, "reduce", PAIR, "z:1")[0] == 2
    assert run(capsys, "reduce", str(tmp_path / "missing.gp"), "1")[0] == 2
    assert run(capsys, "reduce", EXC, "1")[0] == 2


def test_module_entry_point_is_byte_stable():
    cmd = [sys.executable, "-m", "graphprod", "classify", EXC, "--mode", "ch"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and b"AdmitsNonArchimedean" in a
