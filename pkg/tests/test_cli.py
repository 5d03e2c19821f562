from __future__ import annotations

import json

import pytest

from symp_ainf.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_verify_p2_p3(capsys):
    for p in ("2", "3"):
        code, out = run(capsys, "verify", "--p", p, "--format", "json")
        data = json.loads(out)
        assert code == 0 and data["ok"] and data["schema"] == "ainf/1"


def test_verify_text(capsys):
    code, out = run(capsys, "verify", "--p", "3", "--samples", "20")
    assert code == 0 and "all checks passed" in out


@pytest.mark.parametrize("argv", [["verify", "--p", "4"], ["verify", "--p", "3", "--window", "3"],
                                  ["verify", "--p", "7", "--exhaustive-j"], ["ext-table"],
                                  ["model-table", "--p", "3", "--n", "0"]])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_ext_tables(capsys):
    _, out = run(capsys, "ext-table", "--p", "3", "--degree-max", "9", "--format", "json")
    assert [r["dim"] for r in json.loads(out)["rows"]] == [1, 0, 0, 1, 1, 0, 0, 1, 1, 0]
    _, out = run(capsys, "ext-table", "--p", "5", "--degree-max", "8", "--format", "json")
    assert [r["dim"] for r in json.loads(out)["rows"]] == [1, 0, 0, 0, 0, 0, 0, 1, 1]
    _, out = run(capsys, "ext-table", "--p", "5", "--degree-max", "0", "--format", "json")
    rows = json.loads(out)["rows"]
    assert len(rows) == 1 and rows[0]["dim"] == 1


def test_model_table(capsys):
    _, out = run(capsys, "model-table", "--p", "5", "--n", "3", "--format", "json")
    assert all(r["result"] is None for r in json.loads(out)["tables"]["3"])
    _, out = run(capsys, "model-table", "--p", "3", "--n", "3", "--degree-max", "9", "--format", "json")
    recs = json.loads(out)["tables"]["3"]
    assert [r["result"] for r in recs if r["args"] == [{"a": 1, "j": 0}] * 3] == [{"coeff": 2, "a": 0, "j": 2}]


def test_export_and_out_file(tmp_path, capsys):
    path = tmp_path / "res.json"
    code, _ = run(capsys, "export-resolution", "--p", "3", "--window", "10", "--format", "json", "--out", str(path))
    data = json.loads(path.read_text())
    assert code == 0 and data["period"] == 4 and len(data["degrees"]) == 11


def test_json_is_deterministic(capsys):
    outs = [run(capsys, "verify", "--p", "3", "--format", "json", "--seed", "5")[1] for _ in range(2)]
    assert outs[0] == outs[1]
