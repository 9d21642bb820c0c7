import json
import subprocess
import sys

import pytest

from toricsl.cli import EXIT_ERROR, EXIT_FAIL, EXIT_OK, main
from toricsl.sl3 import load_table


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj), encoding="utf-8")
    return str(p)


SQUARE = {"kind": "points", "dim": 2, "rows": [[0, 0], [1, 0], [1, 1], [0, 1]]}


def test_gale(tmp_path, capsys):
    path = write(tmp_path, "sq.json", SQUARE)
    code, out, _ = run(capsys, "gale", path, "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out) == {"kind": "vectors", "dim": 1, "rows": [["1"], ["-1"], ["1"], ["-1"]]}
    code, out, _ = run(capsys, "gale", path)
    assert "g0 = (1)" in out


def test_gale_to_file_then_check2span(tmp_path, capsys):
    src = write(tmp_path, "sq.json", SQUARE)
    dst = str(tmp_path / "g.json")
    assert run(capsys, "gale", src, "-o", dst)[0] == EXIT_OK
    code, out, _ = run(capsys, "check2span", dst)
    assert code == EXIT_OK and "positively 2-spanning" in out


def test_gale_errors(tmp_path, capsys):
    path = write(tmp_path, "bad.json", '{"kind": "points", "dim": 1, "rows": [["0"], ["1/0"], ["2"]]}')
    code, _, err = run(capsys, "gale", path)
    payload = json.loads(err)
    assert code == EXIT_ERROR and payload["error"] == "parse" and payload["line"] == 1
    tri = write(tmp_path, "tri.json", {"kind": "points", "dim": 2, "rows": [[0, 0], [1, 0], [0, 1]]})
    code, _, err = run(capsys, "gale", tri)
    assert code == EXIT_ERROR and "n >= d+2" in json.loads(err)["rule"]
    code, _, err = run(capsys, "gale", str(tmp_path / "missing.json"))
    assert code == EXIT_ERROR and json.loads(err)["error"] == "io"


def test_check2span(tmp_path, capsys):
    path = write(tmp_path, "v.json", {"kind": "vectors", "dim": 1, "rows": [[1], [1], [-1]]})
    code, out, _ = run(capsys, "check2span", path)
    assert code == EXIT_FAIL and "deleting #2" in out
    code, out, _ = run(capsys, "check2span", path, "--format", "json")
    assert json.loads(out)["witness"] == {"deleted_index": 2, "h": ["1"]}

    rows = [[1, 0]] * 3 + [[0, 1]] * 3 + [[-1, -1], [-1, -2]]
    path = write(tmp_path, "e.json", {"kind": "vectors", "dim": 2, "rows": rows})
    code, out, _ = run(capsys, "check2span", path, "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["holds"] and len(doc["certificates"]) == 8

    path = write(tmp_path, "z.json", {"kind": "vectors", "dim": 0, "rows": []})
    code, out, _ = run(capsys, "check2span", path)
    assert code == EXIT_OK and "vacuous" in out


def _ws(free_rank, weights, torsion=()):
    return {"group": {"free_rank": free_rank, "torsion": list(torsion)},
            "weights": [{"free": f, "torsion": t, "mult": m} for f, t, m in weights]}


def test_checkstar(tmp_path, capsys):
    c2 = _ws(3, [([1, 0, 0], [], 3), ([0, 1, 0], [], 3), ([0, 0, 1], [], 3),
                 ([-1, -1, -2], [], 1), ([-1, -2, -1], [], 1)])
    assert run(capsys, "checkstar", write(tmp_path, "c.json", c2))[0] == EXIT_OK
    doubled = _ws(1, [([2], [], 6), ([-2], [], 3)])
    code, out, _ = run(capsys, "checkstar", write(tmp_path, "d.json", doubled), "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_FAIL and doc["spanning"]["holds"]
    assert not any(g["generates"] for g in doc["generation"])
    tors = _ws(1, [([1], [0], 3), ([-1], [1], 3), ([0], [1], 1)], torsion=[2])
    assert run(capsys, "checkstar", write(tmp_path, "t.json", tors))[0] == EXIT_OK


def test_verify_sl3(capsys):
    code, out, _ = run(capsys, "verify-sl3")
    assert code == EXIT_OK and "10/10 rows pass" in out
    code, out, _ = run(capsys, "verify-sl3", "--format", "json")
    doc = json.loads(out)
    assert doc["passed_rows"] == doc["total_rows"] == 10
    code, out, _ = run(capsys, "verify-sl3", "--case", "2b,r=1", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["total_rows"] == 1
    assert [v["label"] for v in doc["rows"][0]["variants"]] == ["2b,r=1"]
    code, out, _ = run(capsys, "verify-sl3", "--pairing", "sum")
    assert code == EXIT_FAIL and "9/10 rows pass" in out
    assert run(capsys, "verify-sl3", "--case", "9z")[0] == EXIT_ERROR
    assert run(capsys, "verify-sl3", "--case", "2b,r=5")[0] == EXIT_ERROR


def test_verify_sl3_corrupted_table(tmp_path, capsys):
    from importlib import resources

    doc = json.loads(resources.files("toricsl").joinpath("data/sl3_table.json").read_text())
    row = next(r for r in doc["rows"] if r["label"] == "2a")
    row["v"] = [[2], [2], [-2]]
    path = write(tmp_path, "table.json", doc)
    code, out, _ = run(capsys, "verify-sl3", "--table", path, "--format", "json")
    res = json.loads(out)
    assert code == EXIT_FAIL and res["passed_rows"] == 9
    assert [r["label"] for r in res["rows"] if not r["passed"]] == ["2a"]
    assert run(capsys, "verify-sl3", "--table", write(tmp_path, "junk.json", "{}"))[0] == EXIT_ERROR


def test_make_series(tmp_path, capsys):
    code, out, _ = run(capsys, "make-series", "4", "1", "--verify", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["verification"]["passed"]
    assert [(w["free"], w["mult"]) for w in doc["document"]["weights"]] == [
        ([1], 4), ([-6], 4), ([6], 4), ([-2], 4)]
    code, _, err = run(capsys, "make-series", "3", "1")
    assert code == EXIT_ERROR and json.loads(err)["error"] == "parameter"
    code, out, _ = run(capsys, "make-series", "5", "3", "--verify")
    assert code == EXIT_OK and "-> pass" in out
    # the emitted document feeds straight back into checkstar
    dst = str(tmp_path / "s.json")
    assert run(capsys, "make-series", "5", "3", "-o", dst)[0] == EXIT_OK
    assert run(capsys, "checkstar", dst)[0] == EXIT_OK


def test_snf(tmp_path, capsys):
    code, out, _ = run(capsys, "snf", write(tmp_path, "m.json", {"rows": [[2, 0], [0, 3]]}), "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["D"] == [[1, 0], [0, 6]] and doc["invariant_factors"] == [1, 6]
    code, out, _ = run(capsys, "snf", write(tmp_path, "i.json", {"rows": [[1, 0], [0, 1]]}), "--format", "json")
    assert json.loads(out)["D"] == [[1, 0], [0, 1]]
    code, out, _ = run(capsys, "snf", write(tmp_path, "e.json", {"rows": []}), "--format", "json")
    assert code == EXIT_OK and json.loads(out)["D"] == []


@pytest.mark.parametrize("argv", [
    ["verify-sl3", "--format", "json"],
    ["make-series", "6", "4", "--verify", "--format", "json"],
])
def test_output_is_deterministic(argv):
    runs = [subprocess.run([sys.executable, "-m", "toricsl", *argv], capture_output=True) for _ in range(2)]
    assert runs[0].returncode == 0
    assert runs[0].stdout == runs[1].stdout


def test_stdin_input():
    proc = subprocess.run([sys.executable, "-m", "toricsl", "gale", "-", "--format", "json"],
                          input=json.dumps(SQUARE), capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["dim"] == 1


def test_bundled_table_loads():
    assert len(load_table()) == 10
