"""Command line surface: exit codes, report files, all subcommands."""

import csv
import json
from fractions import Fraction as F

import pytest

from cumetrics.cli import main
from cumetrics.geometry import CIRCLE, INTERVAL, PLFunction
from cumetrics.morphisms import EigenPattern
from cumetrics.scenarios import robert_unitary
from cumetrics.serialize import dump_pattern, dump_unitary


def winding(k, rot=0):
    return PLFunction(CIRCLE, [(0, F(rot))], winding=k)


@pytest.fixture
def pattern_files(tmp_path):
    a = EigenPattern(CIRCLE, CIRCLE,
                     [(winding(1), 1), (PLFunction.constant(CIRCLE, 0), 1)])
    b = EigenPattern(CIRCLE, CIRCLE,
                     [(winding(1, F(1, 2)), 1),
                      (PLFunction.constant(CIRCLE, F(1, 2)), 1)])
    pa, pb = tmp_path / "a.json", tmp_path / "b.json"
    pa.write_text(json.dumps(dump_pattern(a)))
    pb.write_text(json.dumps(dump_pattern(b)))
    return str(pa), str(pb)


def test_examples_robert(tmp_path, capsys):
    out_csv = tmp_path / "r.csv"
    rc = main(["--csv", str(out_csv), "examples", "robert",
               "--k", "1", "--l", "4", "--stage", "4"])
    assert rc == 0
    rows = list(csv.reader(out_csv.open()))
    assert rows[0] == ["quantity", "stage", "exact", "decimal",
                       "provenance tag", "status"]
    by_key = {(r[0], r[1]): r for r in rows[1:]}
    assert by_key[("dcu", "4")][2] == "1/32"
    assert by_key[("frak_total", "")][2] == "3/2"
    assert capsys.readouterr().out.startswith("robert")


def test_examples_gjl(tmp_path):
    out_json = tmp_path / "g.json"
    rc = main(["--json", str(out_json), "examples", "gjl", "--kseq", "2,3"])
    assert rc == 0
    rep = json.loads(out_json.read_text())
    assert rep["passed"] is True
    dcu1 = [r for r in rep["rows"] if r["quantity"] == "dcu" and r["stage"] == 1]
    assert dcu1[0]["exact"] == "1/3"


def test_examples_novel(tmp_path):
    out_json = tmp_path / "n.json"
    rc = main(["--json", str(out_json), "examples", "novel", "--stage", "4"])
    assert rc == 0
    rep = json.loads(out_json.read_text())
    rows = {(r["quantity"], r["stage"]): r["exact"] for r in rep["rows"]}
    assert rows[("dcu", 4)] == "1/32"
    assert rows[("dstar_frak_lower", 2)] == "3/16"


def test_metric_dcu(pattern_files, capsys):
    pa, pb = pattern_files
    rc = main(["metric", "dcu", pa, pb])
    assert rc == 0
    out = capsys.readouterr().out
    assert "dcu" in out and "1/2" in out


def test_metric_frakd(pattern_files, tmp_path):
    pa, pb = pattern_files
    out_json = tmp_path / "f.json"
    rc = main(["--json", str(out_json), "metric", "frakd", pa, pb])
    assert rc == 0
    rows = {r["quantity"]: r["exact"] for r in
            json.loads(out_json.read_text())["rows"]}
    assert rows["rotation"] == "1/2"
    assert rows["k1"] == "0"


def test_metric_dstar(pattern_files, capsys):
    pa, pb = pattern_files
    assert main(["metric", "dstar", pa, pb]) == 0
    assert main(["metric", "dstar", pa, pb, "--k", "kbar1",
                 "--fiber-metric", "frakd"]) == 0
    out = capsys.readouterr().out
    assert "1/2" in out


def test_det_numeric(tmp_path, capsys):
    u = robert_unitary(2, 2)
    pu = tmp_path / "u.json"
    pu.write_text(json.dumps(dump_unitary(u)))
    rc = main(["det", str(pu), "--numeric", "--steps", "4000"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "det_hat" in out and "numeric_max_err" in out


def test_failing_assertion_exits_nonzero(tmp_path, monkeypatch):
    # a report with a failed embedded check must not exit 0
    from cumetrics import cli
    from cumetrics.scenarios import ScenarioReport

    def broken(args):
        rep = ScenarioReport("demo")
        rep.add("bad", 1, "DERIVED", ok=False)
        return rep

    monkeypatch.setattr(cli, "cmd_det", broken)
    u = robert_unitary(0, 1)
    pu = tmp_path / "u.json"
    pu.write_text(json.dumps(dump_unitary(u)))
    assert main(["det", str(pu)]) == 1
