import csv
import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from cosserat_rayleigh import cli
from cosserat_rayleigh.errors import NoRoot

import oracles

ALU = "aluminum-epoxy"


@pytest.fixture(scope="module")
def schema():
    return json.loads(resources.files("cosserat_rayleigh").joinpath("schema/output.schema.json").read_text())


def _run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _write_material(tmp_path, **overrides):
    data = dict(oracles.ALU, **overrides)
    path = tmp_path / "m.json"
    path.write_text(json.dumps(data))
    return str(path)


def test_solve_json_validates(capsys, schema):
    code, out, _ = _run(capsys, "solve", "--material", ALU)
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema)
    assert doc["result"]["v_R"] == pytest.approx(oracles.V_R, abs=1e-9)
    assert doc["result"]["method"] == "Bisection"


@pytest.mark.parametrize("method", ["newton", "stroh"])
def test_other_methods(capsys, schema, method):
    code, out, _ = _run(capsys, "solve", "--material", ALU, "--method", method)
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema)
    assert doc["result"]["v_R"] == pytest.approx(oracles.V_R, abs=1e-6)


@pytest.mark.parametrize("command", ["check", "limit-speed", "secular-curve", "classical"])
def test_json_outputs_validate(capsys, schema, command):
    code, out, _ = _run(capsys, command, "--material", ALU, "--format", "json", "--v-points", "11")
    assert code == 0
    jsonschema.validate(json.loads(out), schema)


def test_material_file_round_trip(capsys, tmp_path):
    code, out, _ = _run(capsys, "solve", "--material", _write_material(tmp_path))
    assert code == 0
    assert json.loads(out)["material"] == oracles.ALU


def test_csv_layout(capsys):
    code, out, _ = _run(capsys, "secular-curve", "--material", ALU, "--v-points", "21")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# ") and "columns:" in lines[0]
    rows = list(csv.reader(io.StringIO("\n".join(lines[1:]))))
    header, body = rows[0], rows[1:]
    assert len(body) == 21 and all(len(r) == len(header) for r in body)
    for r in body:
        for cell in r:
            digits = cell.lstrip("-").split("e")[0].replace(".", "").lstrip("0")
            assert len(digits) <= 9


def test_dispersion_csv(capsys):
    code, out, _ = _run(capsys, "dispersion", "--material", ALU, "--k-points", "6")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO("\n".join(out.splitlines()[1:]))))
    v = [float(r["v_R"]) for r in rows]
    assert len(v) == 6 and all(b > a for a, b in zip(v, v[1:]))
    assert float(rows[0]["k"]) == pytest.approx(0.1)
    assert float(rows[-1]["k"]) == pytest.approx(100.0)


def test_field_csv(capsys):
    code, out, _ = _run(capsys, "field", "--material", ALU, "--x1-points", "3", "--x2-points", "4", "--phase", "1j")
    assert code == 0
    assert len(out.splitlines()) == 2 + 12


def test_output_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert cli.run(["solve", "--material", ALU, "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert capsys.readouterr().out == ""
    # no temporary files are left behind
    assert sorted(x.name for x in tmp_path.iterdir()) == ["a.json", "b.json"]


def test_atomic_write_keeps_old_file_on_failure(tmp_path, monkeypatch):
    target = tmp_path / "out.csv"
    target.write_text("old\n")

    def boom(src, dst):
        raise OSError("disk full")

    monkeypatch.setattr(cli.os, "replace", boom)
    with pytest.raises(OSError):
        cli.write_atomic(str(target), "new\n")
    assert target.read_text() == "old\n"
    assert [x.name for x in tmp_path.iterdir()] == ["out.csv"]


def test_exit_codes(capsys, tmp_path, monkeypatch):
    code, _, err = _run(capsys, "solve", "--material", ALU, "--bogus")
    assert code == 1 and json.loads(err)["category"] == "usage"
    code, _, err = _run(capsys, "solve", "--material", str(tmp_path / "missing.json"))
    assert code in (1, 2)
    code, out, err = _run(capsys, "check", "--material", _write_material(tmp_path, mu_c=0.0))
    assert code == 2 and json.loads(out)["command"] == "check"
    assert json.loads(err)["category"] == "material"
    code, _, err = _run(capsys, "solve", "--material", _write_material(tmp_path, mu_c=0.0))
    assert code == 2
    code, _, err = _run(capsys, "solve", "--material", ALU, "--quad-n", "8")
    assert code == 1 and json.loads(err)["category"] == "usage"

    def no_root(*args, **kwargs):
        raise NoRoot("no sign change")

    monkeypatch.setattr(cli.rayleigh, "solve", no_root)
    code, out, err = _run(capsys, "solve", "--material", ALU)
    assert code == 3 and out == ""
    assert json.loads(err) == {"category": "numerical", "error": "NoRoot", "message": "no sign change"}


def test_record_commands_refuse_csv(capsys):
    code, _, err = _run(capsys, "solve", "--material", ALU, "--format", "csv")
    assert code == 1


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "cosserat_rayleigh.cli", "classical", "--material", ALU],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("# ")
