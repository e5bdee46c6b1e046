import json

import numpy as np
import pytest

from kleinian.cli import main
from kleinian.jsonio import curve_from_json, divisor_to_json
from kleinian.sampling import random_divisor


@pytest.fixture
def curve34_file(tmp_path):
    path = tmp_path / "c34.json"
    path.write_text(json.dumps({"n": 3, "s": 4, "lambda": {"2": [0.1, 0.05], "6": [0.3, -0.1]}}))
    return str(path)


@pytest.fixture
def lemniscatic_file(tmp_path):
    path = tmp_path / "lemni.json"
    path.write_text(json.dumps({"n": 2, "s": 3, "lambda": {"4": [-1.0, 0.0]}}))
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_describe(capsys, curve34_file):
    code, out, _ = run_cli(capsys, "describe", "--curve", curve34_file)
    assert code == 0
    data = json.loads(out)
    assert data["genus"] == 3
    assert data["gaps"] == [1, 2, 5]
    assert data["wgt_sigma"] == -5
    assert data["family"] == "trigonal-3m+1"


def test_uniformize_invert_roundtrip(capsys, tmp_path, curve34_file):
    curve = curve_from_json(json.load(open(curve34_file)))
    D = random_divisor(curve, 3, np.random.default_rng(3))
    dpath = tmp_path / "d.json"
    dpath.write_text(json.dumps(divisor_to_json(D)))
    code, out, _ = run_cli(capsys, "uniformize", "--curve", curve34_file, "--divisor", str(dpath))
    assert code == 0
    rec = json.loads(out)["record"]
    bpath = tmp_path / "b.json"
    bpath.write_text(json.dumps(rec))
    code, out, _ = run_cli(capsys, "invert-basis", "--curve", curve34_file, "--basis", str(bpath))
    assert code == 0
    result = json.loads(out)
    assert result["max_curve_residual"] < 1e-8
    got = sorted((p[0], p[1]) for p in result["divisor"]["points"])
    want = sorted((p.x.real, p.x.imag) for p in D.points)
    assert np.allclose(got, want, atol=1e-7)


def test_negate_and_add(capsys, tmp_path, curve34_file):
    curve = curve_from_json(json.load(open(curve34_file)))
    rng = np.random.default_rng(5)
    d1, d2 = random_divisor(curve, 3, rng), random_divisor(curve, 3, rng)
    p1, p2 = tmp_path / "d1.json", tmp_path / "d2.json"
    p1.write_text(json.dumps(divisor_to_json(d1)))
    p2.write_text(json.dumps(divisor_to_json(d2)))
    code, out, _ = run_cli(capsys, "negate", "--curve", curve34_file, "--divisor", str(p1))
    assert code == 0 and json.loads(out)["max_curve_residual"] < 1e-8
    code, out, _ = run_cli(capsys, "add", "--curve", curve34_file, "--divisors", str(p1), str(p2))
    assert code == 0
    assert len(json.loads(out)["divisor"]["points"]) == 3


def test_verify_identities_random(capsys, curve34_file):
    code, out, _ = run_cli(
        capsys, "verify-identities", "--curve", curve34_file, "--trials", "3", "--seed", "11"
    )
    assert code == 0
    res = json.loads(out)["residuals"]
    assert set(res) >= {"J12", "J13", "J16", "G6"}
    assert all(v < 1e-7 for k, v in res.items() if not k.startswith("E"))


def test_verify_identities_absurd_tolerance_fails(capsys, curve34_file):
    code, _, _ = run_cli(
        capsys, "verify-identities", "--curve", curve34_file, "--trials", "2",
        "--tol", "identity=1e-30",
    )
    assert code == 1


def test_periods_lemniscatic(capsys, lemniscatic_file):
    code, out, _ = run_cli(capsys, "periods", "--curve", lemniscatic_file)
    assert code == 0
    p = json.loads(out)["periods"]
    tau = complex(*p["tau"][0][0])
    assert abs(tau - 1j) < 1e-8
    assert p["legendre_residual"] < 1e-8
    assert p["characteristic"] == {"eps": [0.5], "eps_prime": [0.5]}


def test_theta_bridge_verb(capsys, tmp_path):
    path = tmp_path / "c25.json"
    path.write_text(json.dumps({"n": 2, "s": 5, "lambda": {"4": [0.2, 0.1], "8": [-0.3, 0.2]}}))
    code, out, _ = run_cli(capsys, "theta-bridge", "--curve", str(path), "--trials", "2", "--seed", "2")
    assert code == 0
    assert json.loads(out)["worst"] < 1e-6


def test_selftest_deterministic(capsys):
    code1, out1, _ = run_cli(capsys, "selftest", "--seed", "42", "--suite", "structural",
                             "--suite", "lemniscatic")
    code2, out2, _ = run_cli(capsys, "selftest", "--seed", "42", "--suite", "structural",
                             "--suite", "lemniscatic")
    assert code1 == code2 == 0
    assert out1 == out2  # byte-identical report under a fixed seed


def test_exit_codes(capsys, tmp_path, curve34_file):
    code, _, err = run_cli(capsys, "describe", "--curve", str(tmp_path / "missing.json"))
    assert code == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2, "s": 4}')  # non-coprime
    code, _, err = run_cli(capsys, "describe", "--curve", str(bad))
    assert code == 2
    code, _, err = run_cli(capsys, "selftest", "--suite", "structural", "--tol", "nope=1")
    assert code == 2


def test_output_file(capsys, tmp_path, curve34_file):
    out_path = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "describe", "--curve", curve34_file, "--output", str(out_path))
    assert code == 0 and out == ""
    assert json.loads(out_path.read_text())["genus"] == 3


def test_unsupported_operation_is_input_error(capsys, tmp_path):
    # a valid curve outside an operation's domain exits 2, not 3
    path = tmp_path / "c45.json"
    path.write_text(json.dumps({"n": 4, "s": 5, "lambda": {}}))
    code, _, err = run_cli(capsys, "uniformize", "--curve", str(path), "--divisor", str(path))
    assert code == 2
    code, _, err = run_cli(capsys, "periods", "--curve", str(path))
    assert code == 2
