import json

import pytest

from twistcode.data import bundled_path, load_bundle, read_group_file, read_table_file, resolve
from twistcode.errors import ParseError


def test_aliases_resolve_to_same_bundle():
    assert resolve("valentiner") is resolve("sigma360")
    assert resolve("2i").name == "2I"


def test_unknown_bundle():
    with pytest.raises(KeyError):
        bundled_path("A5")


def _write_2i(tmp_path, mutate=None):
    group = json.loads(bundled_path("2I").read_text())
    table = json.loads((bundled_path("2I").parent / group["table"]).read_text())
    if mutate:
        mutate(group, table)
    (tmp_path / "t.json").write_text(json.dumps(table, indent=1))
    group["table"] = "t.json"
    (tmp_path / "g.json").write_text(json.dumps(group, indent=1))
    return tmp_path / "g.json"


def test_user_files_load(tmp_path):
    b = load_bundle(_write_2i(tmp_path))
    assert b.group.order == 120 and len(b.table) == 9


def test_toml_group_file(tmp_path):
    group = json.loads(bundled_path("2I").read_text())
    text = (
        'name = "2I"\ndegree = 2\nfundamental = "chi2"\n'
        f'table = "{(bundled_path("2I").parent / group["table"]).as_posix()}"\n'
        f"generators = {json.dumps(group['generators'])}\n"
    )
    path = tmp_path / "g.toml"
    path.write_text(text)
    info = read_group_file(path)
    assert info["degree"] == 2 and len(info["generators"]) == len(group["generators"])
    assert load_bundle(path).group.order == 120


def test_bad_literal_reports_file_and_line(tmp_path):
    def corrupt(group, table):
        table["irreps"][2]["values"][3] = "z5^^2"

    path = _write_2i(tmp_path, corrupt)
    with pytest.raises(ParseError) as exc:
        read_table_file(path.parent / "t.json")
    assert exc.value.path.endswith("t.json") and exc.value.line is not None
    assert f":{exc.value.line}:" in str(exc.value)


def test_malformed_json_reports_line(tmp_path):
    p = tmp_path / "g.json"
    p.write_text('{\n "name": "x",\n "degree": 2,\n oops\n}')
    with pytest.raises(ParseError) as exc:
        read_group_file(p)
    assert exc.value.line == 4


def test_missing_key(tmp_path):
    p = tmp_path / "g.json"
    p.write_text('{"name": "x"}')
    with pytest.raises(ParseError):
        read_group_file(p)


def test_degree_mismatch_in_table(tmp_path):
    def corrupt(group, table):
        table["irreps"][1]["degree"] = 3

    path = _write_2i(tmp_path, corrupt)
    with pytest.raises(ParseError):
        load_bundle(path)
