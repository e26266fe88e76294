from __future__ import annotations

import json
import shutil
import subprocess
import sys

import pytest

from intgrr import fixturegen
from intgrr.cli import (
    INSTANCE_SCHEMA,
    SchemaError,
    fixture_dir,
    fixture_files,
    main,
    parse_bundle,
    parse_variety,
    run_document,
    validate_document,
)


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def doc(*items):
    return {"version": 1, "instances": list(items)}


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


# --- constants ----------------------------------------------------------------------


def test_constants_rows(capsys):
    code, out, _ = run(["constants", "2"], capsys)
    assert code == 0
    rows = [line.split() for line in out.strip().splitlines()]
    assert rows[0] == ["m", "m!", "T_m", "T_m/m!", "B_m"]
    assert rows[1:] == [["0", "1", "1", "1", "1"], ["1", "1", "2", "2", "-1/2"], ["2", "2", "12", "6", "1/6"]]


def test_constants_zero_and_json(capsys):
    _, out, _ = run(["constants", "0"], capsys)
    assert len(out.strip().splitlines()) == 2
    _, out, _ = run(["constants", "3", "--json"], capsys)
    data = json.loads(out)
    assert data[3] == {"m": "3", "factorial": "6", "T": "24", "T_over_factorial": "4", "bernoulli": "0"}


def test_constants_deterministic(capsys):
    _, a, _ = run(["constants", "40"], capsys)
    _, b, _ = run(["constants", "40"], capsys)
    assert a == b


def test_constants_range_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["constants", "65"])
    assert exc.value.code == 2


# --- class ---------------------------------------------------------------------------


def test_class_td_scaled(capsys):
    code, out, _ = run(["class", "td", "--rank", "1", "--deg", "2", "--scale", "T"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "12 + 6·c1 + c1^2"
    assert all("[integral]" in line for line in lines[1:])


def test_class_ch_degree_zero(capsys):
    _, out, _ = run(["class", "ch", "--rank", "2", "--deg", "0"], capsys)
    assert out.splitlines()[0] == "2"


def test_class_ch_unscaled_not_integral(capsys):
    _, out, _ = run(["class", "ch", "--rank", "1", "--deg", "2"], capsys)
    assert "not integral" in out
    _, out, _ = run(["class", "ch", "--rank", "1", "--deg", "2", "--scale", "factorial"], capsys)
    assert "not integral" not in out


def test_class_ct_on_plane(capsys):
    _, out, _ = run(["class", "ct", "--variety", "P2", "--bundle", "O(1)"], capsys)
    lines = out.strip().splitlines()
    assert [line.split(" = ")[0] for line in lines] == ["CT_0", "CT_1", "CT_2"]
    assert all(line.endswith("[integral]") for line in lines)
    # T_0 (ch Td)_0 = 1; T_2 (ch Td)_2 = 12 * 3 h^2
    assert lines[0].startswith("CT_0 = 1 ")
    assert lines[2].startswith("CT_2 = 36·h^2")


def test_class_s_and_tdm(capsys):
    _, out, _ = run(["class", "s", "--variety", "P2", "--bundle", "O(1)"], capsys)
    assert out.splitlines()[1].startswith("s_1 = h ")
    _, out, _ = run(["class", "tdm", "--variety", "P1"], capsys)
    assert out.splitlines()[1].startswith("Td_1 = 2·h ")


def test_class_errors(capsys):
    for argv in (
        ["class", "td", "--rank", "1"],
        ["class", "ct"],
        ["class", "ct", "--variety", "Q3"],
        ["class", "ct", "--variety", "P1xP1", "--bundle", "O(1)"],
    ):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2


def test_parsers():
    model, dims = parse_variety("P1xP2")
    assert dims == (1, 2) and model.dim == 3
    assert parse_variety("pt")[0].dim == 0
    assert parse_bundle("O(1)+O(-2)", parse_variety("P3")[0]) == [(1,), (-2,)]
    assert parse_bundle("O(1,0)", model) == [(1, 0)]
    with pytest.raises(ValueError):
        parse_bundle("L(1)", model)


# --- verify ---------------------------------------------------------------------------


def test_bundled_fixtures_pass(capsys):
    code, out, _ = run(["verify", "--jobs", "4"], capsys)
    assert code == 0
    assert out.startswith("# Limitation:")
    assert "FAIL" not in out


def test_fixtures_match_generator():
    docs = fixturegen.documents()
    assert sorted(docs) == [p.name for p in fixture_files()]
    for name, text in docs.items():
        assert (fixture_dir() / name).read_text() == text


def test_fixture_documents_validate():
    for path in fixture_files():
        validate_document(json.loads(path.read_text()))


def test_precondition_exit_code(tmp_path, capsys):
    f = write(tmp_path, "low.json", doc({"kind": "linear_embedding", "k": 1, "n": 3, "l": 2}))
    code, out, err = run(["verify", f], capsys)
    assert code == 2 and "l >= 3" in err and out == ""
    code, out, _ = run(["verify", "--explore", f], capsys)
    assert code == 0
    assert "explore_min_l=" in out


def test_phi_precondition_exit_code(tmp_path, capsys):
    item = {"kind": "phi", "l": 1, "X": [1], "Y": [1], "Z": [], "a": "diagonal", "b": [{"twist": [0], "coeff": 1}]}
    code, _, _ = run(["verify", write(tmp_path, "p.json", doc(item))], capsys)
    assert code == 2


def test_corrupted_expectation_fails(tmp_path, capsys):
    good = {"kind": "projection", "base": [], "m": 1, "l": 1, "x": [{"twist": [2], "coeff": 1}], "expect": [{"twist": [], "coeff": 3}]}
    bad = dict(good, expect=[{"twist": [], "coeff": 4}], id="corrupted")
    code, _, _ = run(["verify", write(tmp_path, "g.json", doc(good))], capsys)
    assert code == 0
    code, out, _ = run(["verify", write(tmp_path, "b.json", doc(bad))], capsys)
    assert code == 1
    assert "FAIL  corrupted grr" in out
    assert "degree 0:" in out


@pytest.mark.parametrize(
    "data",
    [
        {"version": 1, "instances": [{"kind": "projection", "base": [], "m": 1, "l": 1, "colour": "red"}]},
        {"version": 1, "instances": [{"kind": "projection", "base": [], "l": 1}]},
        {"version": 2, "instances": []},
        {"version": 1, "instances": [], "extra": 1},
        {"version": 1, "instances": [{"kind": "blowup", "l": 1}]},
        {"version": 1, "instances": [{"kind": "projection", "base": [], "m": 1, "l": 1, "x": [{"twist": [1, 2], "coeff": 1}]}]},
        {"version": 1, "instances": [{"kind": "composed", "k": 2, "n": 2, "e": 1, "l": 9}]},
    ],
)
def test_schema_errors_exit_2(tmp_path, capsys, data):
    code, _, err = run(["verify", write(tmp_path, "s.json", data)], capsys)
    assert code == 2
    assert err.startswith("error:")


def test_unreadable_file_exit_2(tmp_path, capsys):
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    assert run(["verify", str(p)], capsys)[0] == 2
    assert run(["verify", str(tmp_path / "missing.json")], capsys)[0] == 2


def test_schema_rejects_unknown_fields_directly():
    with pytest.raises(SchemaError):
        validate_document({"version": 1, "instances": [{"kind": "phi", "l": 6, "X": [], "Y": [], "Z": [], "a": "diagonal", "b": "diagonal", "c": 1}]})
    assert INSTANCE_SCHEMA["additionalProperties"] is False


def test_decimal_string_coefficients(tmp_path, capsys):
    big = "123456789012345678901234567890"
    item = {"kind": "linear_embedding", "k": 0, "n": 1, "l": 1, "E": [{"twist": [], "coeff": big}], "id": "big"}
    code, out, _ = run(["verify", "--json", write(tmp_path, "d.json", doc(item))], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["summary"] == {"passed": "1", "failed": "0"}
    assert big in json.dumps(data["results"][0]["details"])


def test_json_output_and_out_path(tmp_path, capsys):
    item = {"kind": "zero_section", "base": [1], "twists": [2], "l": 2, "checks": ["grr", "pappas", "single_tl"]}
    out_path = tmp_path / "report.json"
    code, out, _ = run(["verify", "--json", "--out", str(out_path), write(tmp_path, "z.json", doc(item))], capsys)
    assert code == 0 and out == ""
    data = json.loads(out_path.read_text())
    assert "NOT verified" in data["limitation"]
    assert [r["status"] for r in data["results"]] == ["PASS"] * 3
    assert [r["name"] for r in data["results"]] == sorted(r["name"] for r in data["results"])


def test_deterministic_and_jobs_independent(capsys):
    path = str(fixture_dir() / "phi.json")
    _, a, _ = run(["verify", path], capsys)
    _, b, _ = run(["verify", "--jobs", "3", path], capsys)
    assert a == b


def test_timing_flag(capsys):
    path = str(fixture_dir() / "phi.json")
    _, out, _ = run(["verify", "--timing", path], capsys)
    assert out.splitlines()[2].rstrip().endswith("s")


def test_fixture_env_override(tmp_path, monkeypatch, capsys):
    shutil.copy(fixture_dir() / "phi.json", tmp_path / "only.json")
    monkeypatch.setenv("GRR_FIXTURES", str(tmp_path))
    assert fixture_files() == [tmp_path / "only.json"]
    code, out, _ = run(["verify"], capsys)
    assert code == 0 and "phi" in out
    empty = tmp_path / "empty"
    empty.mkdir()
    monkeypatch.setenv("GRR_FIXTURES", str(empty))
    assert run(["verify"], capsys)[0] == 2


def test_run_document_api():
    reports, timings = run_document(doc({"kind": "composed", "k": 1, "n": 2, "e": 1, "l": 3, "id": "c"}), timing=True)
    assert [r.name for r in reports] == ["c grr"]
    assert reports[0].passed and "c grr" in timings


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "intgrr", "constants", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1].split() == ["1", "1", "2", "2", "-1/2"]
