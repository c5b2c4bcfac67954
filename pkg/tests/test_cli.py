import csv
import io
import json
import subprocess
import sys

import pytest

from conftest import table_rows
from intgrass.classify import TypedVariety
from intgrass.cli import EXIT_INVALID, EXIT_USAGE, load_grading, run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_count_range():
    assert call("count", "--range", "4..8") == (0, "1,2,2,4,4\n")
    code, text = call("count", "--range", "4..6", "--oracle", "--format", "json")
    assert json.loads(text) == {"4": 1, "5": 2, "6": 2}
    assert call("count", "--n", "7", "--format", "csv")[1] == "n,count\n7,4\n"


def test_enumerate_csv():
    code, text = call("enumerate", "--n", "5", "--fano", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 2
    expected = [r["matrix"] for r in table_rows() if r["n"] == 5]
    got = [[list(map(int, r["matrix_x"].split())), list(map(int, r["matrix_y"].split()))] for r in rows]
    assert got == expected


def test_enumerate_other_statuses():
    code, text = call("enumerate", "--n", "6", "--almost-fano", "--format", "json")
    assert code == 0 and all(r["fano"] == "truly_almost" for r in json.loads(text))
    code, text = call("enumerate", "--n", "5", "--all", "--max-alpha", "1", "--format", "text")
    assert code == 0 and "neither" in text
    assert call("enumerate", "--n", "5", "--all")[0] == EXIT_INVALID


def test_table_markdown_golden():
    code, text = call("table", "--n-from", "5", "--n-to", "8", "--format", "md")
    assert code == 0
    lines = [l for l in text.splitlines() if l.startswith("| ") and not l.startswith("| No.")]
    assert len(lines) == 12
    for line, row in zip(lines, table_rows()):
        cells = [c.strip() for c in line.strip("|").split("|")]
        no, n, mat, k, h0 = cells
        assert int(no) == row["no"] and int(n) == row["n"]
        rows = [list(map(int, part.split())) for part in mat.strip("[]").split(";")]
        assert rows == row["matrix"]
        assert k == f"({row['antican'][0]},{row['antican'][1]})"
        if row["no"] != 3:
            assert int(h0) == row["h0"]
        else:
            assert int(h0) == 3150


def test_table_is_deterministic_and_parallel_safe():
    a = call("table", "--format", "csv")[1]
    b = call("table", "--format", "csv", "--jobs", "2")[1]
    assert a == b
    assert call("table", "--format", "csv")[1] == a


def test_table_json_round_trip(tmp_path):
    code, text = call("table", "--n-from", "5", "--n-to", "6", "--format", "json", "--no-h0")
    rows = json.loads(text)
    for rec in rows:
        v = TypedVariety.from_json(rec)
        assert v.grading().matrix() == rec["matrix"]
        path = tmp_path / f"v{rec['no']}.json"
        path.write_text(json.dumps(rec))
        g, v2 = load_grading(str(path))
        assert v2 == v and g == v.grading()
        code, rep = call("geometry", "--variety", str(path), "--json")
        assert code == 0 and json.loads(rep)["dim_x"] == 2 * rec["n"] - 5


def _write(tmp_path, obj, name="g.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def test_validate_and_analyze(tmp_path):
    row = table_rows()[0]
    path = _write(tmp_path, {"n": 5, "matrix": row["matrix"]})
    code, text = call("validate", "--matrix", path, "--json")
    assert code == 0 and json.loads(text)["dim_x"] == 5
    code, text = call("analyze", "--matrix", path, "--ample", "1,1", "--json")
    rep = json.loads(text)
    assert code == 0
    assert rep["smooth"] == "smooth" and rep["antican"] == [3, 2] and rep["fano"] == "fano"
    assert rep["semiample_cone"] == "cone((1,0), (0,1))"
    code, text = call("analyze", "--matrix", path, "--ample", "1,0")
    assert code == 0 and "unknown" in text


def test_grading_json_round_trip(tmp_path):
    v = TypedVariety.type6(4, (0, 1))
    path = _write(tmp_path, v.grading().to_json())
    g, none = load_grading(path)
    assert none is None and g == v.grading()
    code, text = call("geometry", "--variety", path)
    assert code == 0 and "Type6" in text


def test_relations():
    code, text = call("relations", "--n", "5")
    assert code == 0 and text.splitlines()[0] == "g_1234 = T12*T34 - T13*T24 + T14*T23"
    assert len(text.splitlines()) == 5
    data = json.loads(call("relations", "--n", "4", "--format", "json")[1])
    assert data == [{"quad": [1, 2, 3, 4], "terms": [[1, [1, 2], [3, 4]], [-1, [1, 3], [2, 4]], [1, [1, 4], [2, 3]]]}]


def test_hilbert(tmp_path):
    path = _write(tmp_path, {"n": 5, "matrix": table_rows()[0]["matrix"]})
    assert call("hilbert", "--matrix", path, "--degree", "3,2") == (0, "280\n")
    assert call("hilbert", "--matrix", path, "--degree", "1,1", "--oracle") == (0, "20\n")
    assert call("hilbert", "--matrix", path, "--degree", "1,1", "--oracle", "--method", "straighten") == (0, "20\n")
    assert call("hilbert", "--matrix", path, "--degree", "9,9", "--oracle")[0] == EXIT_INVALID


def test_exit_codes(tmp_path, capsys):
    assert call("frobnicate")[0] == EXIT_USAGE
    assert call("count", "--n", "5", "--bogus")[0] == EXIT_USAGE
    assert call("count")[0] == EXIT_USAGE
    assert call("count", "--range", "8..4")[0] == EXIT_USAGE
    capsys.readouterr()
    bad = _write(tmp_path, {"n": 4, "t_weights": [[1, 0], [1, 0], [0, 2], [1, 0], [0, 2], [0, 2]]})
    assert call("validate", "--matrix", bad)[0] == EXIT_INVALID
    err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert err == {"error": "invalid_grading", "failed": ["almost_free"]}
    assert call("validate", "--matrix", str(tmp_path / "missing.json"))[0] == EXIT_INVALID
    torsion = _write(tmp_path, {"n": 4, "t_weights": [[1, 0]] * 6, "torsion": [2]}, "t.json")
    assert call("validate", "--matrix", torsion)[0] == EXIT_INVALID
    err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert err["error"] == "InvalidParameter"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "intgrass", "count", "--range", "4..8"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout == "1,2,2,4,4\n"
    proc = subprocess.run([sys.executable, "-m", "intgrass", "--nope"], capture_output=True, text=True, check=False)
    assert proc.returncode == EXIT_USAGE


@pytest.mark.parametrize("fmt", ["md", "csv", "json", "text"])
def test_enumerate_formats_are_plain_decimal(fmt):
    code, text = call("enumerate", "--n", "7", "--format", fmt, "--h0")
    assert code == 0
    assert "e+" not in text and "48206" in text
