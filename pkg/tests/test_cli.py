"""Command-line front end: presets, scenario validation, exit codes,
deterministic machine reports."""

import json

import pytest

from cartankit import cli
from cartankit.presets import preset


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_minkowski_residuals_all_zero(capsys):
    code, out, err = run_cli(
        capsys, "residuals", "--scenario", "preset:minkowski",
        "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "pass"
    for rec in report["residuals"]["prop31"]:
        assert cli._is_zero_table(rec["einstein"])
        assert cli._is_zero_table(rec["spin"])
        assert cli._is_zero_table(rec["equivariance0"])
    for rec in report["residuals"]["prop32"]:
        assert cli._is_zero_table(rec["r1"])
        assert cli._is_zero_table(rec["r2"])


def test_minkowski_tensors_zero(capsys):
    code, out, _ = run_cli(capsys, "tensors", "--scenario",
                           "preset:minkowski", "--format", "json")
    assert code == 0
    report = json.loads(out)
    for entry in report["tensors"]:
        assert entry["scalar_curvature"] == "0/1"
        assert cli._is_zero_table(entry["einstein_mixed"])
        assert cli._is_zero_table(entry["torsion_frame"])


def test_verify_filter_deterministic(capsys, tmp_path):
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    code, _, _ = run_cli(capsys, "verify", "--filter", r"yoga\..*",
                         "--seed", "7", "--out", str(out1))
    assert code == 0
    code, _, _ = run_cli(capsys, "verify", "--filter", r"yoga\..*",
                         "--seed", "7", "--out", str(out2))
    assert code == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_scenario_file_roundtrip(capsys, tmp_path):
    sc = preset("constant-connection")
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(sc))
    code, out, _ = run_cli(capsys, "residuals", "--scenario", str(path),
                           "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["scenario"]["name"] == "constant-connection"


def test_antisymmetry_violation_exit3(capsys, tmp_path):
    sc = preset("minkowski")
    sc["connection"][0][0][1] = "1"  # A^{00}_1 != 0
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(sc))
    code, _, err = run_cli(capsys, "all", "--scenario", str(path))
    assert code == 3
    assert "antisymmetry" in err and "A^{00}" in err


def test_degenerate_tetrad_exit3(capsys, tmp_path):
    sc = preset("minkowski")
    sc["tetrad"][0][0] = "x0"
    sc["evaluation_points"] = [["0", "0", "0", "0"]]
    path = tmp_path / "degen.json"
    path.write_text(json.dumps(sc))
    code, _, err = run_cli(capsys, "tensors", "--scenario", str(path))
    assert code == 3
    assert "degenerate" in err


def test_parse_error_exit2(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, err = run_cli(capsys, "tensors", "--scenario", str(path))
    assert code == 2
    assert "line" in err
    sc = preset("minkowski")
    sc["tetrad"][0][0] = "x0 + $"
    path.write_text(json.dumps(sc))
    code, _, err = run_cli(capsys, "tensors", "--scenario", str(path))
    assert code == 2
    assert "position" in err


def test_unknown_preset_lists_alternatives(capsys):
    code, _, err = run_cli(capsys, "tensors", "--scenario", "preset:bogus")
    assert code == 2
    assert "minkowski" in err and "vacuum-check" in err


def test_random_poly_preset_deterministic():
    assert preset("random-poly(2,42)") == preset("random-poly(2,42)")
    assert preset("random-poly(2,42)") != preset("random-poly(2,43)")


def test_env_seed_override(capsys, monkeypatch):
    monkeypatch.setenv("CARTANKIT_SEED", "123")
    code, out, _ = run_cli(capsys, "verify", "--filter", r"ec\.minkowski",
                           "--seed", "5", "--format", "json")
    assert code == 0
    assert json.loads(out)["scenario"]["seed"] == 123
    monkeypatch.setenv("CARTANKIT_SEED", "notanint")
    code, _, err = run_cli(capsys, "verify")
    assert code == 2


def test_text_and_json_same_numbers(capsys):
    code, json_out, _ = run_cli(capsys, "tensors", "--scenario",
                                "preset:constant-connection",
                                "--format", "json")
    report = json.loads(json_out)
    code, text_out, _ = run_cli(capsys, "tensors", "--scenario",
                                "preset:constant-connection",
                                "--format", "text")
    # every nonzero tensor value printed in the text report verbatim
    for entry in report["tensors"]:
        for a in range(4):
            for c in range(4):
                for d in range(4):
                    v = entry["torsion_frame"][a][c][d]
                    if v != "0/1":
                        assert v in text_out
        assert entry["scalar_curvature"] in text_out


def test_momentum_scenario(capsys, tmp_path):
    sc = preset("minkowski")
    psi0 = [[[["0"] * 6 for _ in range(4)] for _ in range(4)]
            for _ in range(4)]
    psi1 = [[["0"] * 6 for _ in range(4)] for _ in range(4)]
    psi1[0][0][0] = "x1"
    sc["momentum"] = {"psi0": psi0, "psi1": psi1}
    # x-only momenta are annihilated by rho_j, so residuals stay zero
    path = tmp_path / "mom.json"
    path.write_text(json.dumps(sc))
    code, out, _ = run_cli(capsys, "residuals", "--scenario", str(path),
                           "--format", "json")
    assert code == 0
    report = json.loads(out)
    for rec in report["residuals"]["prop32"]:
        assert cli._is_zero_table(rec["r1"])


def test_failed_assertion_exit1(capsys, tmp_path):
    sc = preset("constant-connection")
    sc["expect_zero_residuals"] = ["r2"]  # torsion is nonzero here
    path = tmp_path / "expectfail.json"
    path.write_text(json.dumps(sc))
    code, _, err = run_cli(capsys, "residuals", "--scenario", str(path))
    assert code == 1
    assert "r2" in err
