import json

import pytest

from smb.cli import run_captured


def run(*argv):
    return run_captured(list(argv))


def test_density_example():
    code, out, _ = run("density", "--family", "boolean", "--alpha", "1/2", "--rho", "1", "--x", "1")
    assert code == 0
    assert json.loads(out) == {"x": 1.0, "density": 0.15915494309189535}


def test_csv_output():
    code, out, _ = run("density", "--family", "boolean", "--alpha", "0.5", "--rho", "1", "--x", "1", "4",
                       "--format", "csv")
    lines = out.strip().split("\n")
    assert code == 0 and lines[0] == "x,density" and len(lines) == 3


def test_repeat_runs_byte_identical():
    argv = ("transform", "--family", "boolean", "--alpha", "0.5", "--rho", "1", "--kind", "eta", "--z=-1-1j")
    assert run(*argv) == run(*argv)
    argv = ("sample", "--family", "boolean", "--alpha", "0.5", "--rho", "1", "-n", "50", "--seed", "4")
    first = run(*argv)
    assert first[0] == 0 and len(first[1].split()) == 50 and first == run(*argv)


@pytest.mark.parametrize("argv", [
    ("density", "--bogus"),
    ("density", "--family", "boolean", "--alpha", "nan", "--rho", "1", "--x", "1"),
    ("density", "--family", "boolean", "--alpha", "1.5", "--rho", "1", "--x", "1"),
    ("density", "--family", "boolean", "--rho", "1", "--x", "1"),
    ("sample", "--family", "delta", "--at", "1", "-n", "3"),
    ("verify", "--identity", "I4", "--alpha", "0.9"),
    ("verify", "--identity", "I4", "--alpha", "0.9", "--seed", "1", "--method", "mc-ks"),
    ("hankel", "--s", "1"),
    ("transform", "--family", "boolean", "--alpha", "0.5", "--rho", "1", "--kind", "eta", "--z", "x"),
])
def test_usage_errors_exit_2(argv):
    code, out, err = run(*argv)
    assert code == 2 and out == "" and "error" in err


def test_numerical_failure_exit_3(monkeypatch):
    monkeypatch.setenv("SMB_QUAD_TOL", "1e-300")
    code, out, err = run("mixture-density", "--mixing-family", "mp", "--alpha", "0.5", "--rho", "0.5",
                         "--x", "1")
    assert code == 3 and out == "" and "numerical failure" in err


def test_verify_pass_and_fail_codes():
    code, out, _ = run("verify", "--identity", "I4", "--alpha", "0.9", "--seed", "1")
    assert code == 0 and json.loads(out)["pass"] is True
    code, out, _ = run("verify", "--identity", "I4", "--alpha", "0.9", "--seed", "1", "--tol", "1e-30")
    assert code == 1 and json.loads(out)["pass"] is False


def test_verify_list():
    code, out, _ = run("verify", "--list")
    assert code == 0 and len(json.loads(out)) == 17


def test_hankel_output():
    code, out, _ = run("hankel", "--s", "1", "--t", "1", "--max-order", "5")
    assert code == 0
    assert json.loads(out) == {"status": "pass", "first_failing_order": None, "max_order": 5,
                               "dets": ["1"] * 6}


def test_moments_exact():
    code, out, _ = run("moments", "--s", "1/2", "--t", "1/2", "--n", "3", "--exact")
    assert code == 0 and json.loads(out)["moments"] == ["1", "1/2", "1/2", "9/16"]


def test_fid_and_lambda():
    assert json.loads(run("fid-region", "--alpha", "0.6", "--rho", "0.5")[1])["region"] == "FID"
    out = json.loads(run("lambda", "--t", "0.6", "--rho", "0.45")[1])
    assert out["fid"] is True and out["indicator"] == pytest.approx(1.0942, abs=1e-4)


def test_lln_boolean():
    out = json.loads(run("lln", "--family", "boolean", "--alpha", "0.5", "--x", "0.5", "1")[1])
    assert out["cdf"] == pytest.approx([1 / 3, 1 / 2], abs=1e-10)


def test_sample_to_file(tmp_path):
    path = tmp_path / "v.txt"
    code, out, _ = run("sample", "--family", "delta", "--at", "2", "-n", "3", "--seed", "0", "-o", str(path))
    assert code == 0 and json.loads(out)["n"] == 3
    assert path.read_text().split() == ["2.0"] * 3
