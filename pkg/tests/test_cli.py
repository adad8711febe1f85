import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest
from referencing import Registry, Resource

from gradedgroups.cli import CAPS, EXIT_CAP, EXIT_OK, EXIT_USAGE, load_schema, main

SCHEMAS = ["vee_element", "gamma", "info", "table", "periodic", "characters", "central", "constants"]


@pytest.fixture(scope="module")
def registry():
    return Registry().with_resources(
        (f"{name}.schema.json", Resource.from_contents(load_schema(name))) for name in SCHEMAS)


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def run_json(argv, capsys):
    code, out, _ = run(argv + ["--format", "json"], capsys)
    assert code == EXIT_OK
    return json.loads(out)


def validate(doc, name, registry):
    jsonschema.Draft202012Validator(load_schema(name), registry=registry).validate(doc)


def test_schemas_are_valid():
    for name in SCHEMAS:
        jsonschema.Draft202012Validator.check_schema(load_schema(name))


def test_info_quaternion(capsys, registry):
    rep = run_json(["info", "0", "2"], capsys)
    validate(rep, "info", registry)
    assert rep["order"] == 8
    assert rep["center"] == ["1", "Z"]
    assert rep["class_count"] == 5
    assert rep["normal_form"] == "Q"
    assert rep["automorphism_order"] == 24
    assert rep["hyperoctahedral_order"] == 8
    assert rep["even_part"] == "Z" and rep["even_part_normal_form"] == "C_4"


def test_info_trivial_signature(capsys, registry):
    rep = run_json(["info", "0", "0"], capsys)
    validate(rep, "info", registry)
    assert rep["order"] == 2 and rep["abelian"] and rep["center_tag"] == "C2"


def test_info_dihedral_signature(capsys, registry):
    rep = run_json(["info", "--signature", "1,Z"], capsys)
    validate(rep, "info", registry)
    assert rep["normal_form"] == "D"
    assert rep["class_count"] == 5
    assert "automorphism_order" not in rep  # mixed flags


def test_info_text_and_csv(capsys):
    code, out, _ = run(["info", "1", "0"], capsys)
    assert code == EXIT_OK and "order: 4" in out
    code, out, _ = run(["info", "1", "0", "--format", "csv"], capsys)
    rows = dict(csv.reader(io.StringIO(out)))
    assert rows["order"] == "4" and rows["abelian"] == "True"


@pytest.mark.parametrize("sig", ["1,1", "1,Z", "Z,1", "Z,Z", "1,Z,1"])
def test_table_json(sig, capsys, registry):
    doc = run_json(["table", "--signature", sig], capsys)
    validate(doc, "table", registry)
    elems = doc["elements"]
    assert doc["table"][0] == elems
    assert [row[0] for row in doc["table"]] == elems


def test_table_text_identity_row_equals_header(capsys):
    code, out, _ = run(["table", "--signature", "Z,Z", "--format", "csv"], capsys)
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][1:] == rows[1][1:]
    assert rows[0][1:] == ["1", "Z", "e_{12}", "Z e_{12}", "e_1", "Z e_1", "e_2", "Z e_2"]
    code, text, _ = run(["table", "--signature", "Z,Z"], capsys)
    assert text.splitlines()[1].split() == ["1", "1", "Z", "e_{12}", "Z", "e_{12}", "e_1", "Z", "e_1", "e_2", "Z", "e_2"]


def test_table_n3_is_associative(capsys):
    doc = run_json(["table", "--signature", "1,Z,Z"], capsys)
    keys = [json.dumps(e, sort_keys=True) for e in doc["elements"]]
    pos = {k: i for i, k in enumerate(keys)}
    t = [[pos[json.dumps(c, sort_keys=True)] for c in row] for row in doc["table"]]
    size = len(t)
    for a in range(size):
        for b in range(size):
            ab = t[a][b]
            for c in range(size):
                assert t[ab][c] == t[a][t[b][c]]


def test_periodic_small_and_row_eight(capsys, registry):
    doc = run_json(["periodic", "--max-n", "0"], capsys)
    validate(doc, "periodic", registry)
    assert [e["normal_form"] for e in doc["rows"][0]["entries"]] == ["C_2"]
    doc = run_json(["periodic", "--max-n", "8", "--algebra"], capsys)
    validate(doc, "periodic", registry)
    row8 = [e["short"] for e in doc["rows"][8]["entries"]]
    assert row8[0] == row8[-1] == "D^4"


def test_periodic_csv_round_trips_to_json(capsys):
    doc = run_json(["periodic", "--max-n", "8", "--algebra"], capsys)
    code, out, _ = run(["periodic", "--max-n", "8", "--algebra", "--format", "csv"], capsys)
    parsed = [{"p": int(r["p"]), "q": int(r["q"]), "normal_form": r["normal_form"], "order": int(r["order"]),
               "algebra": r["algebra"]} for r in csv.DictReader(io.StringIO(out))]
    from_json = [{k: e[k] for k in ("p", "q", "normal_form", "order", "algebra")}
                 for row in doc["rows"] for e in row["entries"]]
    assert parsed == from_json


def test_periodic_text_has_orders(capsys):
    code, out, _ = run(["periodic", "--max-n", "3", "--algebra"], capsys)
    assert code == EXIT_OK
    assert out.splitlines()[4].rstrip().endswith("16")
    assert "M_2(K)^2" in out


def test_characters(capsys, registry):
    doc = run_json(["characters", "1"], capsys)
    validate(doc, "characters", registry)
    assert doc["matrix"] == [[1, 1], [1, -1]]
    code, out, _ = run(["characters", "2"], capsys)
    assert out.splitlines()[1].split() == ["1", "-1", "1", "-1"]


def test_constants_quaternion(capsys, registry):
    doc = run_json(["constants", "--signature", "Z,Z"], capsys)
    validate(doc, "constants", registry)
    cells = {(c["A"], c["B"]): (c["sign"], c["AxorB"]) for c in doc["constants"]}
    assert cells[("e_1", "e_1")] == (-1, "1")
    assert cells[("e_2", "e_2")] == (-1, "1")
    assert cells[("e_{12}", "e_{12}")] == (-1, "1")
    assert cells[("e_1", "e_2")] == (1, "e_{12}")
    assert cells[("e_2", "e_1")] == (-1, "e_{12}")
    code, out, _ = run(["constants", "--signature", "Z,Z", "--format", "csv"], capsys)
    assert out.splitlines()[0] == "A,B,sign,AxorB"
    code, out, _ = run(["constants", "--signature", "Z,Z"], capsys)
    assert "-e_{12}" in out


def test_central(capsys, registry):
    doc = run_json(["central", "--signature", "1,1"], capsys)
    validate(doc, "central", registry)
    assert doc["count"] == 5
    code, out, _ = run(["central", "--signature", "1", "--format", "csv"], capsys)
    assert out.splitlines()[0] == "name,element,coeff"
    code, out, _ = run(["central", "1", "0"], capsys)
    assert out.count("\n") == 4


@pytest.mark.parametrize("argv", [
    ["info", "1", "1", "--format", "text"],
    ["table", "--signature", "1,Z", "--format", "csv"],
    ["periodic", "--max-n", "6", "--format", "json"],
    ["characters", "3", "--format", "csv"],
    ["central", "0", "3", "--format", "json"],
    ["constants", "2", "1"],
])
def test_output_is_deterministic(argv, capsys):
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    assert first == second and first


def test_out_file(tmp_path, capsys):
    target = tmp_path / "t.csv"
    code, out, _ = run(["table", "1", "0", "--format", "csv", "--out", str(target)], capsys)
    assert code == EXIT_OK and out == ""
    assert target.read_text(encoding="utf-8").startswith(",1,Z")


@pytest.mark.parametrize("argv", [
    ["info"],
    ["info", "1"],
    ["info", "1", "2", "3"],
    ["info", "1", "1", "--signature", "1,Z"],
    ["info", "--signature", "1,X"],
    ["info", "-1", "0"],
    ["periodic", "--max-n", "-1"],
    ["characters", "-2"],
    ["bogus"],
    ["table", "--format", "xml", "1", "1"],
])
def test_usage_errors(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == EXIT_USAGE
    assert out == ""


@pytest.mark.parametrize("cmd", sorted(CAPS))
def test_size_caps(cmd, capsys):
    over = str(CAPS[cmd] + 1)
    argv = {"periodic": ["periodic", "--max-n", over], "characters": ["characters", over]}.get(cmd, [cmd, over, "0"])
    code, out, err = run(argv, capsys)
    assert code == EXIT_CAP and "exceeds" in err


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "gradedgroups", "info", "0", "1", "--format", "json"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["center_tag"] == "C4"
