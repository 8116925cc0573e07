import json
import subprocess
import sys
from importlib import resources

import pytest

from siltlab.cli import main

DATA = resources.files("siltlab") / "data"


def data(name):
    return str(DATA / name)


@pytest.fixture(autouse=True)
def in_tmp(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def report(path="siltlab-report.json"):
    with open(path) as fh:
        return json.load(fh)


def test_check_algebra(capsys):
    assert main(["check-algebra", data("lambda0.alg")]) == 0
    out = capsys.readouterr().out
    assert "dim 5" in out
    assert report()["algebra"]["basis_count_by_length"] == {"0": 2, "1": 2, "2": 1}


def test_check_algebra_syntax_error(tmp_path):
    bad = tmp_path / "bad.alg"
    bad.write_text("vertices: 1 2\narrow a 1 -> 2\n")
    assert main(["check-algebra", str(bad)]) == 2
    assert "line 2" in report()["error"]


def test_hom_window(tmp_path):
    r3 = tmp_path / "r3.cpx"
    r3.write_text(
        "degree -3: P1\ndegree -2: P1\ndegree -1: P1\ndegree 0: P2\n"
        "d(-3)[1,1] = a*b\nd(-2)[1,1] = a*b\nd(-1)[1,1] = b\n"
    )
    code = main(["hom", "--alg", "lambda0", "--src", data("p2.cpx"), "--tgt", str(r3), "--window", "-5..5"])
    assert code == 0
    dims = report()["dims"]
    assert {int(m) for m, d in dims.items() if d} == {-3, -2, -1, 0}
    assert all(d in (0, 1) for d in dims.values())


def test_bad_window():
    assert main(["hom", "--alg", "lambda0", "--src", data("p1.cpx"), "--tgt", data("p2.cpx"), "--window", "3..1"]) == 2


def test_mutate_regular_object(capsys):
    code = main(["mutate", "--alg", "lambda0", "--silting", data("p1.cpx"), data("p2.cpx"), "--index", "1"])
    assert code == 0
    rep = report()
    assert rep["path"] == "1+"
    assert rep["certificate"]["provenance"] == "replayed"
    assert rep["summands"][0]["terms"] == {"-1": ["P1"], "0": ["P2"]}


def test_mutate_without_a_path_is_flagged(tmp_path):
    col = tmp_path / "m.col"
    col.write_text("object\ndegree -1: P1\ndegree 0: P2\nd(-1)[1,1] = b\nobject\ndegree 0: P2\n")
    assert main(["mutate", "--alg", "lambda0", "--silting", str(col), "--index", "2", "--dir", "right"]) == 0
    assert report()["certificate"]["flag"] == "presilting-only: generation not verified"


def test_quiver_radius_zero(tmp_path):
    assert main(["quiver", "--alg", "lambda0", "--radius", "0", "--dot", "q.dot", "--json", "q.json"]) == 0
    g = json.loads((tmp_path / "q.json").read_text())
    assert len(g["nodes"]) == 1 and g["edges"] == []
    assert (tmp_path / "q.dot").read_text().count("->") == 0


def test_quiver_output_is_byte_identical(tmp_path):
    outs = []
    for k in range(2):
        main(["quiver", "--alg", "lambda0", "--radius", "2", "--dot", f"q{k}.dot", "--json", f"q{k}.json", "--report", f"r{k}.json"])
        outs.append([(tmp_path / f).read_bytes() for f in (f"q{k}.dot", f"q{k}.json", f"r{k}.json")])
    assert outs[0] == outs[1]


def test_smc_of_path():
    assert main(["smc-of", "--alg", "lambda0", "--path", "1+,2-"]) == 0
    rep = report()
    assert rep["certificate"]["generation"] == "provenance"
    assert len(rep["members"]) == 2


def test_smc_of_bad_index():
    assert main(["smc-of", "--alg", "lambda0", "--path", "3+"]) == 2


def test_smc_of_depth_cap():
    assert main(["smc-of", "--alg", "lambda0", "--path", "1+", "--depth-cap", "0"]) == 3
    assert report()["status"] == "cap exceeded"


def test_rickard_on_simples(tmp_path):
    col = tmp_path / "simples.col"
    col.write_text("object\ndegree -1: P2\ndegree 0: P1\nd(-1)[1,1] = a\n"
                   "object\ndegree -2: P2\ndegree -1: P1\ndegree 0: P2\nd(-2)[1,1] = a\nd(-1)[1,1] = b\n")
    assert main(["rickard", "--alg", "lambda0", "--smc", str(col)]) == 0
    rep = report()
    assert rep["defects"] == []
    assert sorted(s["terms"]["0"][0] for s in rep["summands"]) == ["P1", "P2"]


def test_rickard_rejects_a_non_collection():
    assert main(["rickard", "--alg", "lambda0", "--smc", data("p1.cpx"), data("p2.cpx")]) == 1
    assert report()["status"] == "fail"


def test_rickard_cap(tmp_path):
    # left mutation of the simples at the first member; the second member needs two stages
    col = tmp_path / "c.col"
    col.write_text("object\ndegree -2: P2\ndegree -1: P1\nd(-2)[1,1] = a\nobject\ndegree 0: P2\n")
    assert main(["rickard", "--alg", "lambda0", "--smc", str(col), "--cap", "1"]) == 3
    assert main(["rickard", "--alg", "lambda0", "--smc", str(col), "--cap", "2"]) == 0
    assert report()["stages"] == [0, 2]


def test_usage_errors_still_write_a_report():
    assert main(["quiver"]) == 2
    assert report()["status"] == "error"
    assert main(["no-such-command"]) == 2


def test_missing_file():
    assert main(["hom", "--alg", "lambda0", "--src", "nope.cpx", "--tgt", "nope.cpx"]) == 2


def test_module_entry_point(tmp_path):
    res = subprocess.run(
        [sys.executable, "-m", "siltlab", "check-algebra", "a3", "--report", "-"],
        capture_output=True,
        text=True,
        cwd=tmp_path,
    )
    assert res.returncode == 0
    assert '"dim": 6' in res.stdout
