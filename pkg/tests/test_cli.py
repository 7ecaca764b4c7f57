import json

import pytest

from cubictrace.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------------------
# exit codes


def test_exit_codes_four_ways(capsys, tmp_path):
    # pass
    code, out, _ = run(capsys, "cubic", "disc", "1,0,2,11")
    assert code == 0 and json.loads(out)["discriminant"] == -3299
    # violation: two fields of disc -3299 are inequivalent
    code, _, _ = run(capsys, "cubic", "equiv", "1,0,2,11", "1,-2,10,-1")
    assert code == 1
    # bad input: wrong arity
    code, _, err = run(capsys, "cubic", "disc", "1,0,2")
    assert code == 2 and "error" in err
    # inconclusive: no ternary witness within the bound
    g1 = tmp_path / "g1.json"
    g1.write_text(json.dumps({"form": "2,3,-21,4",
                              "basis": [["1", "0", "0"], ["0", "-2", "0"], ["21", "-3", "-2"]]}))
    g2 = tmp_path / "g2.json"
    g2.write_text(json.dumps({"gram": [[3, 0, 0], [0, 90, 45], [0, 45, 270]]}))
    code, _, _ = run(capsys, "trace", "ternary-check", str(g1), str(g2), "--bound", "6")
    assert code == 3


# ---------------------------------------------------------------------------
# qf


def test_qf_reduce_and_compose(capsys):
    code, out, _ = run(capsys, "qf", "reduce", "3,7,5")
    assert code == 0
    doc = json.loads(out)
    assert doc["reduced"] == "1,1,3" and doc["matrix"] == [[-1, -2], [1, 1]]
    code, out, _ = run(capsys, "qf", "compose", "2,1,3", "2,1,3")
    assert code == 0
    doc = json.loads(out)
    assert doc["composed"] == "2,-1,3" and doc["class"] == "2,-1,3"


def test_qf_classgroup_frozen(capsys):
    code, out, _ = run(capsys, "qf", "classgroup", "-23")
    assert code == 0
    doc = json.loads(out)
    assert doc["class_count"] == 3
    assert doc["invariant_factors"] == [3]
    assert doc["representatives"] == ["1,1,6", "2,-1,3", "2,1,3"]


def test_qf_classgroup_csv_out(capsys, tmp_path):
    p = tmp_path / "cg.csv"
    code, out, _ = run(capsys, "qf", "classgroup", "-23", "--format", "csv", "--out", str(p))
    assert code == 0 and out == ""
    assert p.read_text().splitlines() == ["a,b,c", "1,1,6", "2,-1,3", "2,1,3"]


def test_qf_equiv_exit(capsys):
    code, out, _ = run(capsys, "qf", "equiv", "2,1,3", "2,-1,3")
    assert code == 0  # GL2-equivalent (improperly)
    doc = json.loads(out)
    assert doc["gl2"] and not doc["proper"]
    code, _, _ = run(capsys, "qf", "equiv", "1,1,6", "2,1,3")
    assert code == 1


def test_qf_bad_discriminant(capsys):
    code, _, err = run(capsys, "qf", "classgroup", "7")
    assert code == 2 and "error" in err


# ---------------------------------------------------------------------------
# cubic


def test_cubic_hessian(capsys):
    code, out, _ = run(capsys, "cubic", "hessian", "1,0,2,11")
    assert code == 0
    doc = json.loads(out)
    assert doc["hessian"] == "-6,-99,4"
    assert doc["discriminant"] == 9897


def test_cubic_equiv_witness(capsys):
    code, out, _ = run(capsys, "cubic", "equiv", "1,0,2,11", "14,37,35,11")
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "equivalent"
    assert doc["witness"] == [[1, 0], [1, 1]]


def test_cubic_enumerate(capsys, tmp_path):
    p = tmp_path / "fields.json"
    code, _, _ = run(capsys, "cubic", "enumerate", "--dmin", "-300", "--dmax", "-1",
                     "--out", str(p))
    assert code == 0
    lines = [json.loads(x) for x in p.read_text().splitlines()]
    assert [e["d"] for e in lines] == sorted(e["d"] for e in lines)
    assert len(lines) == 19
    assert lines[0] == {"d": -283, "form": "1,0,4,-1"}
    assert lines[-1] == {"d": -23, "form": "1,-3,2,-1"}


# ---------------------------------------------------------------------------
# trace


def test_trace_zero_both_methods(capsys):
    code, out, _ = run(capsys, "trace", "zero", "1,0,2,11")
    assert code == 0
    doc = json.loads(out)
    assert doc["binary"] == "-2,-99,12" and doc["case"] == "B0"
    code, out, _ = run(capsys, "trace", "zero", "1,0,2,11", "--method", "kernel")
    assert code == 0
    assert json.loads(out)["discriminant"] == 9897


def test_trace_grouprel(capsys):
    code, out, _ = run(capsys, "trace", "grouprel", "1,0,2,11")
    assert code == 0
    doc = json.loads(out)
    assert doc["holds"] and doc["sign"] == 1


def test_trace_caso3_sign(capsys):
    code, out, _ = run(capsys, "trace", "caso3", "2,-8,-1,-3")
    assert code == 0
    doc = json.loads(out)
    assert doc["holds"] and doc["case"] == "BmC" and doc["sign"] == -1


def test_trace_ternary_witness_found(capsys, tmp_path):
    g1 = tmp_path / "g1.json"
    g1.write_text(json.dumps({"form": "1,9,-18,-3",
                              "basis": [[1, 0, 0], [0, -1, 0], [18, -9, -1]]}))
    g2 = tmp_path / "g2.json"
    g2.write_text(json.dumps({"gram": [[3, 0, 0], [0, 90, 45], [0, 45, 270]]}))
    code, out, _ = run(capsys, "trace", "ternary-check", str(g1), str(g2), "--bound", "6")
    assert code == 0
    doc = json.loads(out)
    assert doc["gram1"] == [[3, 9, 18], [9, 117, 9], [18, 9, 378]]
    assert doc["witness"] == [[-1, -3, 6], [0, 1, 0], [0, 0, -1]]


def test_trace_bad_json(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    g2 = tmp_path / "g2.json"
    g2.write_text(json.dumps({"gram": [[3, 0, 0], [0, 90, 45], [0, 45, 270]]}))
    code, _, err = run(capsys, "trace", "ternary-check", str(p), str(g2))
    assert code == 2 and "error" in err


# ---------------------------------------------------------------------------
# cube


def test_cube_q1_from_file(capsys, tmp_path):
    p = tmp_path / "cube.json"
    p.write_text(json.dumps({"A": [[0, 3], [1, 0]], "B": [[-824, 3], [0, -1]]}))
    code, out, _ = run(capsys, "cube", "q1", str(p))
    assert code == 0
    doc = json.loads(out)
    assert doc["q1"] == "3,3,-824"
    assert doc["q2"] == "-824,3,3"
    assert doc["q3"] == "-2472,-3,1"
    assert doc["discriminant"] == 9897


def test_cube_phi1(capsys):
    code, out, _ = run(capsys, "cube", "phi1", "1,2,3,4")
    assert code == 0
    doc = json.loads(out)
    assert doc["phi1"] == "1,2,1"


def test_cube_grouprel2(capsys):
    code, out, _ = run(capsys, "cube", "grouprel2", "1,0,2,11")
    assert code == 0
    doc = json.loads(out)
    assert doc["holds"] and doc["sign"] == 1


def test_cube_surj_search(capsys, tmp_path):
    p = tmp_path / "surj.json"
    code, _, _ = run(capsys, "cube", "surj-search", "--disc", "9897", "--bound", "12",
                     "--out", str(p))
    assert code == 3  # not surjective in this box
    doc = json.loads(p.read_text())
    assert doc["missing"] == ["-38,63,39"]


# ---------------------------------------------------------------------------
# field


def test_field_record(capsys):
    code, out, _ = run(capsys, "field", "record", "1,0,2,11")
    assert code == 0
    doc = json.loads(out)
    assert doc["signature"] == "complex" and doc["discriminant"] == -3299


def test_field_split(capsys):
    code, out, _ = run(capsys, "field", "split", "1,0,0,-6", "7")
    assert code == 0
    assert json.loads(out)["label"] == "111"


def test_field_distinguish(capsys):
    code, out, _ = run(capsys, "field", "distinguish", "1,0,2,11", "1,-2,10,-1")
    assert code == 0
    assert json.loads(out)["prime"] == 11
    # same field: no separating prime
    code, _, _ = run(capsys, "field", "distinguish", "1,0,2,11", "14,37,35,11",
                     "--pmax", "100")
    assert code == 3


def test_field_hasse(capsys):
    code, out, _ = run(capsys, "field", "hasse", "-3299")
    assert code == 0
    doc = json.loads(out)
    assert doc["fields_found"] == 4 and doc["ok"]


# ---------------------------------------------------------------------------
# survey


def test_survey_run(capsys, tmp_path):
    p = tmp_path / "report.json"
    code, out, err = run(capsys, "survey", "run", "--dmin", "-120", "--dmax", "-1",
                         "--checks", "hasse,grouprel", "--out", str(p))
    assert code == 0
    doc = json.loads(p.read_text())
    assert doc["checks"] == ["hasse", "grouprel"]
    assert doc["totals"]["failures"] == 0
    assert out == "" and "wrote" in err
    # without --out the JSON report lands on stdout
    code, out, _ = run(capsys, "survey", "run", "--dmin", "-120", "--dmax", "-1",
                       "--checks", "hasse")
    assert code == 0 and json.loads(out)["totals"]["failures"] == 0


def test_survey_bad_check(capsys):
    code, _, err = run(capsys, "survey", "run", "--dmin", "-10", "--dmax", "-1",
                       "--checks", "hasse,bogus")
    assert code == 2 and "error" in err
