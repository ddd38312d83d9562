"""CLI: values, exit codes, determinism, schema validity."""

import json
from pathlib import Path

import pytest

from curlsharp.cli import main

SCHEMA = json.loads(
    (Path(__file__).resolve().parents[1] / "src" / "curlsharp"
     / "schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def validate(doc: str):
    jsonschema = pytest.importorskip("jsonschema")
    jsonschema.validate(json.loads(doc), SCHEMA)


def test_constants_3_0(capsys):
    code, out = run(capsys, "constants", "--N", "3", "--gamma", "0")
    assert code == 0
    doc = json.loads(out)
    assert doc["C_min"] == "25/36" and doc["C_argmin"] == 0
    assert doc["A_min"] == "25/36" and doc["equal"] is True
    assert doc["H"] == "25/36"
    validate(out)


def test_constants_2_1(capsys):
    code, out = run(capsys, "constants", "--N", "2", "--gamma", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["C_min"] == "1" and doc["A_min"] == "0"
    assert doc["strict_improvement"] is True
    validate(out)


def test_constants_rational_literal(capsys):
    code, out = run(capsys, "constants", "--N", "3", "--gamma", "1/2")
    doc = json.loads(out)
    assert code == 0 and doc["float_path"] is False
    assert doc["C_min"] == "2"


def test_constants_decimal_goes_float_path(capsys):
    code, out = run(capsys, "constants", "--N", "3", "--gamma", "0.25")
    doc = json.loads(out)
    assert code == 0 and doc["float_path"] is True and "warning" in doc
    validate(out)


def test_certify_single_regime(capsys):
    code, out = run(capsys, "certify", "--regime", "n2")
    assert code == 0
    doc = json.loads(out)
    assert doc["all_ok"] and doc["passed"] == doc["total"]
    validate(out)


def test_quotient(capsys):
    code, out = run(capsys, "quotient", "--N", "3", "--gamma", "0",
                    "--nu", "0", "--ns", "5,10,20")
    assert code == 0
    doc = json.loads(out)
    gaps = [row["gap"] for row in doc["rows"]]
    assert gaps[0] > gaps[1] > gaps[2] > 0
    assert 1.8 <= doc["fitted_exponent"] <= 2.2
    validate(out)


def test_quotient_degenerate_exit(capsys):
    code, out = run(capsys, "quotient", "--N", "2", "--gamma", "1", "--nu", "1")
    assert code == 1
    assert "error" in json.loads(out)


def test_sweep_csv(capsys):
    code, out = run(capsys, "sweep", "--N", "5", "--gamma-grid=-1:1:0.5")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == ("N,gamma,A_min,A_argmin,C_min,C_argmin,"
                        "equal,in_improvement_region")
    assert len(lines) == 6
    row0 = lines[3].split(",")  # gamma = 0.0
    assert row0[0] == "5" and row0[6] == "False" and row0[7] == "True"


def test_sweep_json_schema(capsys):
    code, out = run(capsys, "sweep", "--N", "4", "--gamma-grid=0:1:0.5",
                    "--format", "json")
    assert code == 0
    validate(out)


def test_oracle(capsys):
    code, out = run(capsys, "oracle", "--N", "2", "--gamma", "1/2",
                    "--nu", "1", "--n", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["rel_lap"] < 1e-6 and doc["rel_grad"] < 1e-6
    validate(out)


def test_remainder_deterministic(capsys):
    code1, out1 = run(capsys, "remainder", "--seed", "3", "--count", "3")
    code2, out2 = run(capsys, "remainder", "--seed", "3", "--count", "3")
    assert code1 == code2 == 0
    assert out1 == out2  # byte-identical for identical inputs
    doc = json.loads(out1)
    assert doc["all_ok"] and len(doc["rows"]) == 9
    validate(out1)


def test_usage_errors():
    assert main(["constants", "--N", "3"]) == 2          # missing gamma
    assert main(["nonsense"]) == 2
    assert main(["quotient", "--N", "3", "--gamma", "0.1", "--nu", "0"]) == 2


def test_output_file_and_outdir(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("CURLSHARP_OUTDIR", str(tmp_path))
    code = main(["constants", "--N", "4", "--gamma", "0",
                 "--output", "c.json"])
    assert code == 0
    doc = json.loads((tmp_path / "c.json").read_text())
    assert doc["C_min"] == "3"
    capsys.readouterr()
