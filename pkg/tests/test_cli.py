import json

import pytest

from curvmoduli.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def make_ball(capsys, tmp_path, scale, name):
    path = tmp_path / name
    code, _ = run_cli(capsys, "body", "make", "--shape", "icosphere", "--level", "1",
                      "--size", str(scale), "--out", str(path))
    assert code == 0
    return path


def test_boundary_lemma_example(capsys, tmp_path):
    a = make_ball(capsys, tmp_path, "1.0", "ball.json")
    b = make_ball(capsys, tmp_path, "1.1", "ball_11.json")
    code, out = run_cli(capsys, "approx", "3to3", "--a", str(a), "--b", str(b),
                        "--mesh-level", "2", "--sample-level", "1")
    assert code == 0
    cert = json.loads(out)
    assert cert["eps"] == pytest.approx(0.1, abs=1e-9)
    assert cert["nu"] == pytest.approx(2.52, abs=1e-9)
    assert cert["equivariant"] is True
    assert cert["dis_f"] <= cert["nu"]


def test_classify_cell(capsys):
    code, out = run_cli(capsys, "classify", "--dim", "2", "--k", "1")
    assert code == 0
    assert json.loads(out)["surfaces"] == ["cylinder", "mobius"]


def test_classify_name(capsys):
    code, out = run_cli(capsys, "classify", "--name", "Moebius band")
    assert code == 0
    report = json.loads(out)
    assert report["canonical"] == "mobius"
    assert report["admissible"] is True


def test_metric_double_roundtrip(capsys, tmp_path):
    poly = tmp_path / "square.json"
    code, _ = run_cli(capsys, "body", "make", "--shape", "regular-polygon",
                      "--n", "4", "--out", str(poly))
    assert code == 0
    code, out = run_cli(capsys, "metric", "double", "--body", str(poly),
                        "--boundary-target", "8", "--rings", "1")
    assert code == 0
    sample = json.loads(out)
    assert sample["kind"] == "double2d"
    assert len(sample["points"]) > 8


def test_moduli_invariants_and_reduce(capsys):
    code, out = run_cli(capsys, "moduli", "invariants", "--kind", "mobius",
                        "--mass-scale", "1.5", "--params", "2,3")
    assert code == 0
    assert json.loads(out)["invariants"] == [1.5, 3.0, 2.0]
    code, out = run_cli(capsys, "moduli", "reduce", "--basis", "1,0,1,1")
    assert code == 0
    red = json.loads(out)
    assert red["v1"] == [1.0, 0.0] and red["v2"] == [0.0, 1.0]


def test_missing_input_file_exits_2(capsys, tmp_path):
    code, _ = run_cli(capsys, "body", "hull", "--a", str(tmp_path / "nope.json"))
    assert code == 2


def test_hypothesis_violation_exits_3(capsys, tmp_path):
    small = tmp_path / "seg1.json"
    big = tmp_path / "seg3.json"
    small.write_text(json.dumps({"vertices": [[-0.5, 0, 0], [0.5, 0, 0]]}))
    big.write_text(json.dumps({"vertices": [[-1.5, 0, 0], [1.5, 0, 0]]}))
    code, _ = run_cli(capsys, "approx", "1to1", "--a", str(small), "--b", str(big))
    assert code == 3


def test_verify_subset_is_deterministic(capsys, tmp_path):
    out1 = tmp_path / "v1.json"
    out2 = tmp_path / "v2.json"
    code, text = run_cli(capsys, "verify", "--criteria", "10,11,12", "--seed", "7",
                         "--out", str(out1))
    assert code == 0
    assert "[PASS] criterion 10" in text
    assert "PASS: 3/3 criteria passed (seed 7)" in text
    code, _ = run_cli(capsys, "verify", "--criteria", "10,11,12", "--seed", "7",
                      "--out", str(out2))
    assert code == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_sweep_writes_csv_and_figures(capsys, tmp_path):
    out = tmp_path / "flat.csv"
    code, text = run_cli(capsys, "sweep", "flatten", "--thicknesses", "0.4,0.2",
                         "--mesh-level", "2", "--out", str(out), "--format", "csv",
                         "--figures")
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "parameter,case,measured,bound,allowance"
    assert len(lines) == 3
    pngs = list(tmp_path.glob("*.png"))
    assert pngs, "figure files should appear next to the report"
    assert "figure:" in text


def test_figures_require_an_output_path(capsys):
    code, _ = run_cli(capsys, "sweep", "flatten", "--thicknesses", "0.4",
                      "--mesh-level", "2", "--figures")
    assert code == 2
