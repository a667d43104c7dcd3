import json
import subprocess
import sys

import pytest

from twistcode.cli import main, parse_range
from twistcode.errors import ValidationError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_range():
    assert parse_range("1..4") == [1, 2, 3, 4]
    assert parse_range("5,8,11") == [5, 8, 11]
    with pytest.raises(ValidationError):
        parse_range("a..b")


def test_multiplicities_2i(capsys):
    code, out, _ = run(capsys, "multiplicities", "--group", "2I", "--lambda", "chi3", "--n", "1..13")
    assert code == 0
    lines = [l for l in out.splitlines() if not l.startswith("#")]
    assert lines == ["n=7: 1", "n=9: 8", "n=11: 44", "n=13: 209"]


def test_multiplicities_sigma_json(capsys):
    code, out, _ = run(capsys, "multiplicities", "--group", "sigma360", "--lambda", "chi3", "--n", "1..19",
                       "--format", "json")
    data = json.loads(out)
    nonzero = {int(k): v for k, v in data["multiplicities"].items() if v}
    assert nonzero == {7: 15, 10: 477, 13: 13222, 16: 358450, 19: 9684357}
    assert data["schema_version"] == "1" and "alignment" in data


def test_header_shows_alignment(capsys):
    _, out, _ = run(capsys, "classes", "--group", "sigma360")
    assert out.splitlines()[0].startswith("# sigma360: table columns -> classes [")


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--group", "2I", "--lambda", "chi3", "--n", "7", "--t", "2",
                       "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["verdict"] == "pass" and data["distance"]["d"] == 3 and data["kl"]["errors_checked"] == 210


def test_tgroup_exit_codes(capsys):
    assert run(capsys, "tgroup", "--group", "2I", "--t", "5")[0] == 0
    assert run(capsys, "tgroup", "--group", "2I", "--t", "6")[0] == 1
    code, out, _ = run(capsys, "twisted", "--group", "2I", "--lambda", "chi3")
    assert code == 0 and "max t = 2" in out


def test_branch_default_rows(capsys):
    _, out, _ = run(capsys, "branch", "--group", "2I")
    assert "13       [6,-6]  ->  chi1 + chi5 + chi6 + chi8" in out
    _, out, _ = run(capsys, "branch", "--group", "sigma360", "--irrep", "[4,0,-4]", "--format", "json")
    assert json.loads(out)["rows"][0]["restriction"]["chi12"] == 4


def test_build_code_writes_json(tmp_path, capsys):
    target = tmp_path / "code.json"
    code, _, _ = run(capsys, "build-code", "--group", "sigma360", "--lambda", "chi4", "--n", "5",
                     "--output", str(target))
    assert code == 0
    assert json.loads(target.read_text())["shape"] == [243, 3]


def test_error_exit_codes(capsys):
    assert run(capsys, "build-code", "--group", "2I", "--lambda", "chi5", "--n", "3")[0] == 3
    assert run(capsys, "build-code", "--group", "2I", "--n", "13")[0] == 4
    assert run(capsys, "norms", "--group", "nope")[0] == 3
    code, _, err = run(capsys, "norms", "--group", "2I", "--lambda", "chi99")
    assert code == 3 and "chi99" in err


def test_bad_group_file_exit_code(tmp_path, capsys):
    p = tmp_path / "g.json"
    p.write_text("{\n  bad\n}")
    code, _, err = run(capsys, "classes", "--group", str(p))
    assert code == 2 and ":2:" in err


def test_reproduce_subset(capsys):
    code, out, _ = run(capsys, "reproduce-paper", "--only", "1..4")
    assert code == 0 and out.count("[PASS]") == 4


def test_console_script_runs():
    res = subprocess.run([sys.executable, "-m", "twistcode.cli", "norms", "--group", "2I"],
                         capture_output=True, text=True, check=True)
    assert "||chi3 * f^3|| = 6" in res.stdout
