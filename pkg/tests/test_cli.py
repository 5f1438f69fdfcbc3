import io
import json
import os
import subprocess
import sys

import pytest

from gammawald.cli import main
from gammawald.specfile import (
    FIXTURES,
    build_permutative,
    fixture_text,
    load_fixture,
    parse_spec,
    serialize_spec,
    spec_from_permcat,
)

from helpers import fixture_dict


def run_cli(*argv, stdin: str | None = None, env: dict | None = None) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "gammawald.cli", *argv],
        input=stdin,
        capture_output=True,
        text=True,
        env={**os.environ, **(env or {})},
    )


def test_validate_builtin_passes(capsys):
    assert main(["validate", "builtin:C2"]) == 0
    assert "validate: PASS" in capsys.readouterr().out


def test_dangling_name_exits_2_and_names_the_field(tmp_path, capsys):
    d = fixture_dict("X1")
    d["compose"] = [["t", "s", "t"]]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(d))
    assert main(["validate", str(path)]) == 2
    err = capsys.readouterr().err
    assert "compose[0]" in err and "'s'" in err


@pytest.mark.parametrize(
    "text, field",
    [
        ("[]", None),
        ('{"objects": []}', "objects"),
        ('{"objects": ["a", "a"]}', "objects"),
        ('{"objects": ["a"], "colour": 1}', None),
        ('{"objects": ["a"], "tensor_obj": []}', "tensor_obj"),
        ('{"objects": ["a"], "wedges": []}', "wedges"),
    ],
)
def test_schema_errors(tmp_path, capsys, text, field):
    path = tmp_path / "s.json"
    path.write_text(text)
    assert main(["validate", str(path)]) == 2
    err = capsys.readouterr().err
    assert err.startswith("error: ")
    if field:
        assert field in err


def test_invalid_json_reports_position(tmp_path, capsys):
    path = tmp_path / "s.json"
    path.write_text('{"objects": [')
    assert main(["validate", str(path)]) == 2
    assert "line 1" in capsys.readouterr().err


def test_missing_file_and_unknown_builtin(capsys):
    assert main(["validate", "/nonexistent/spec.json"]) == 2
    assert main(["validate", "builtin:nope"]) == 2


def test_non_permutative_spec_rejected_for_gamma(tmp_path):
    path = tmp_path / "s.json"
    path.write_text('{"objects": ["a"]}')
    assert main(["gamma", str(path)]) == 2


def test_bad_parameters_exit_2():
    assert main(["axioms", "builtin:C2", "--max-len", "-1"]) == 2
    assert main(["axioms", "builtin:C2", "--budget", "0"]) == 2


def test_window_cap_exceeded_exits_2(capsys):
    assert main(["gamma", "builtin:Z3", "--max-len", "3", "--max-morphisms", "100"]) == 2
    assert "error:" in capsys.readouterr().err


def test_axioms_text_report_has_counts(capsys):
    assert main(["axioms", "builtin:C2", "--max-len", "2"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("axioms: PASS")
    assert "iii.universal: checked=" in out
    assert "iv.gluing: checked=" in out


def test_findings_exit_1(tmp_path, capsys):
    d = fixture_dict("X1")
    d["compose"] = [["t", "t", "id_x"]]
    path = tmp_path / "x.json"
    path.write_text(json.dumps(d))
    assert main(["validate", str(path), "--format", "json"]) == 1
    rep = json.loads(capsys.readouterr().out)
    assert rep["outcome"] == "fail"
    assert {f["kind"] for f in rep["findings"]} == {"permutative.functor.interchange"}


def test_json_report_shape(capsys):
    assert main(["k0", "builtin:Z3", "--format", "json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert list(rep) == ["command", "input_digest", "parameters", "outcome", "counts", "findings", "notes"]
    assert rep["command"] == "k0"
    assert rep["parameters"]["max_len"] == 2
    assert rep["notes"]["segal"]["group"] == "Z/3"
    assert rep["notes"]["waldhausen L=3"]["group"] == "Z/3"
    assert rep["counts"]["oracle.minors"]["checked"] == rep["counts"]["oracle.minors"]["passed"]


def test_stdin_input(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(fixture_text("C2")))
    assert main(["validate", "-", "--format", "json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["outcome"] == "pass"


@pytest.mark.parametrize("name", FIXTURES)
def test_round_trip(name):
    spec = load_fixture(name)
    again = parse_spec(serialize_spec(spec))
    assert again == spec


@pytest.mark.parametrize("name", ("C2", "X1", "Z3"))
def test_spec_from_permcat_round_trip(name):
    p = build_permutative(load_fixture(name))
    q = build_permutative(parse_spec(serialize_spec(spec_from_permcat(p))))
    assert q.base.obj_names == p.base.obj_names
    assert q.tensor_obj == p.tensor_obj
    assert q.symmetry == p.symmetry


@pytest.mark.parametrize("command", ("axioms", "k0", "adjunction"))
def test_json_is_byte_identical_across_hash_seeds(command):
    argv = (command, "builtin:X1", "--format", "json", "--budget", "500", "--seed", "3")
    a = run_cli(*argv, env={"PYTHONHASHSEED": "1"})
    b = run_cli(*argv, env={"PYTHONHASHSEED": "987"})
    assert a.returncode == b.returncode == 0, a.stderr
    assert a.stdout == b.stdout


def test_report_all_on_pointed_sets():
    out = run_cli("report-all", "builtin:pointed_sets", "--format", "json")
    assert out.returncode == 0, out.stdout[-2000:]
    rep = json.loads(out.stdout)
    assert any(k.startswith("adjunction.counit.") for k in rep["counts"])


def test_quillen_a_flag(capsys):
    assert main(["quillen-a", "builtin:C2", "--max-len", "1"]) == 0
    assert main(["quillen-a", "builtin:C2", "--max-len", "1", "--all-morphisms"]) == 1
    out = capsys.readouterr().out
    assert "comma_objects: all morphisms" in out
