import csv
import io
import json
import subprocess
import sys

import pytest

from hodgephase.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def oscillator(tmp_path):
    path = tmp_path / "oscillator.txt"
    path.write_text("# H = (x^2 + p^2)/2\n0.5 2 0\n0.5 0 2\n")
    return path


# --- table -------------------------------------------------------------------------------


def test_table_cl2_json(capsys):
    code, out, _ = run_cli(capsys, "table", "--sig", "2,0", "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(out)
    i = doc["blades"].index("e12")
    assert doc["table"][i][i] == "-1"


def test_table_cl3_size_and_diagonal(capsys):
    code, out, _ = run_cli(capsys, "table", "--format", "json")
    doc = json.loads(out)
    assert sum(len(r) for r in doc["table"]) == 64
    for lab in ("e1", "e2", "e3"):
        i = doc["blades"].index(lab)
        assert doc["table"][i][i] == "1"


def test_table_mixed_signature_diagonal(capsys):
    _, out, _ = run_cli(capsys, "table", "--sig", "1,1", "--format", "json")
    doc = json.loads(out)
    diag = [doc["table"][i][i] for i, lab in enumerate(doc["blades"]) if len(lab) == 2]
    assert diag == ["1", "-1"]


def test_table_text(capsys):
    code, out, _ = run_cli(capsys, "table", "--sig", "2,0")
    assert code == EXIT_OK and "row * column" in out


def test_table_too_large(capsys):
    code, _, err = run_cli(capsys, "table", "--sig", "7,0")
    assert code == EXIT_USAGE and "DimensionTooLarge" in err


# --- verify --------------------------------------------------------------------------------


def test_verify_hodge_cl4(capsys):
    code, out, _ = run_cli(capsys, "verify", "--sig", "4,0", "--suites", "hodge")
    assert code == EXIT_OK and "all passed" in out


def test_verify_rejects_lorentzian_hodge(capsys):
    code, _, err = run_cli(capsys, "verify", "--sig", "3,1", "--suites", "hodge")
    assert code == EXIT_USAGE and "NonEuclideanSignature" in err


def test_verify_dual_cl5_json(capsys):
    code, out, _ = run_cli(capsys, "verify", "--sig", "5,0", "--suites", "dual", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["passed"]
    ident = doc["suites"][0]["identities"][0]
    assert ident["checks"] == 32 and ident["failures"] == 0


def test_verify_mixed_signature_algebraic_suites(capsys):
    code, _, _ = run_cli(capsys, "verify", "--sig", "3,1", "--suites", "clifford,assoc")
    assert code == EXIT_OK


def test_verify_float_mode(capsys):
    code, out, _ = run_cli(capsys, "verify", "--sig", "3,0", "--mode", "float", "--epsilon", "1e-9")
    assert code == EXIT_OK and "float" in out


def test_verify_unknown_suite(capsys):
    code, _, _ = run_cli(capsys, "verify", "--suites", "bogus")
    assert code == EXIT_USAGE


def test_verify_failure_exit_code(capsys, monkeypatch):
    from hodgephase import identities

    def broken(sig, mode, rng):
        res = identities.IdentityResult("always_fails")
        res.record(False, lambda: "forced")
        return identities.SuiteResult("clifford", sig, [res])

    monkeypatch.setitem(identities.SUITES, "clifford", broken)
    code, out, _ = run_cli(capsys, "verify", "--suites", "clifford")
    assert code == EXIT_FAIL and "FAIL" in out and "forced" in out


# --- decompose / audit / spha --------------------------------------------------------------


def test_decompose(capsys):
    code, out, _ = run_cli(capsys, "decompose", "--sig", "4,0", "--format", "json")
    assert code == EXIT_OK and len(json.loads(out)["pairs"]) == 3


def test_audit(capsys):
    code, out, _ = run_cli(capsys, "audit", "--n-max", "6", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert any(not r["paper_parity_defined"] for r in doc["rows"])
    assert all(r["computed_class"] for r in doc["rows"])


@pytest.mark.parametrize("n", ["1", "9"])
def test_audit_range(capsys, n):
    code, _, _ = run_cli(capsys, "audit", "--n-max", n)
    assert code == EXIT_USAGE


@pytest.mark.parametrize("sig", ["4,0", "3,1"])
def test_spha(capsys, sig):
    code, out, _ = run_cli(capsys, "spha", "--sig", sig, "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["closure"] and doc["pairs"] == 120


def test_spha_time_last_and_rescale(capsys):
    code, _, _ = run_cli(capsys, "spha", "--sig", "3,1", "--eta", "time-last", "--rescale",
                         "--ell", "2", "--R", "3")
    assert code == EXIT_OK


def test_spha_unsupported(capsys):
    code, _, err = run_cli(capsys, "spha", "--sig", "3,0")
    assert code == EXIT_USAGE and "UnsupportedSignature" in err


# --- dynamics --------------------------------------------------------------------------------


def test_dynamics_csv(capsys, oscillator, tmp_path):
    out_path = tmp_path / "traj.csv"
    code, _, err = run_cli(capsys, "dynamics", "--sig", "3,0", "--k", "1", "--h", str(oscillator),
                           "--dt", "1e-3", "--steps", "1000", "--stride", "10", "--out", str(out_path))
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out_path.read_text())))
    assert rows[0] == ["t", "x", "p", "H"]
    assert len(rows) == 1 + 101
    assert "commuting pair" in err


def test_dynamics_final_energy_error_oscillator(capsys, oscillator):
    code, out, _ = run_cli(capsys, "dynamics", "--sig", "3,0", "--k", "1", "--h", str(oscillator),
                           "--dt", "1e-3", "--steps", "10000")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == EXIT_OK and len(rows) == 10_001
    # leapfrog keeps |dH| at the O(dt^2) level
    assert abs(float(rows[-1]["H"]) - float(rows[0]["H"])) < 1e-7


def test_dynamics_missing_file(capsys, tmp_path):
    code, _, _ = run_cli(capsys, "dynamics", "--h", str(tmp_path / "missing.txt"))
    assert code == EXIT_USAGE


@pytest.mark.parametrize("extra", [["--steps", "0"], ["--dt", "-1"], ["--k", "5"], ["--format", "json"]])
def test_dynamics_bad_params(capsys, oscillator, extra):
    code, _, _ = run_cli(capsys, "dynamics", "--h", str(oscillator), *extra)
    assert code == EXIT_USAGE


def test_dynamics_blowup_exit_code(capsys, tmp_path):
    path = tmp_path / "unstable.txt"
    path.write_text("-1 6 0\n0.5 0 2\n")
    code, out, _ = run_cli(capsys, "dynamics", "--h", str(path), "--x0", "3", "--dt", "0.1", "--steps", "1000")
    assert code == EXIT_FAIL and out.startswith("t,x,p,H")


# --- general --------------------------------------------------------------------------------


def test_bad_signature_flag(capsys):
    code, _, _ = run_cli(capsys, "table", "--sig", "three")
    assert code == EXIT_USAGE


def test_missing_command(capsys):
    assert run_cli(capsys)[0] == EXIT_USAGE


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hodgephase", "table", "--sig", "1,0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "e1" in proc.stdout


@pytest.mark.parametrize("argv", [
    ["verify", "--sig", "4,0", "--seed", "7", "--format", "json"],
    ["audit", "--n-max", "6"],
    ["spha", "--sig", "3,1", "--format", "json"],
])
def test_same_seed_same_bytes(capsys, argv):
    first = run_cli(capsys, *argv)[1]
    second = run_cli(capsys, *argv)[1]
    assert first == second
