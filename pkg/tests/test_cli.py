import json

import pytest

from ordhyp import cli
from ordhyp.construct import near_pencil
from ordhyp.enumeration import spectrum
from ordhyp.serialize import config_from_json, read_csv


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def strip_time(text):
    data = json.loads(text)
    data["manifest"]["wall_time"] = None
    return data


def test_construct_count_round_trip(tmp_path, capsys):
    path = tmp_path / "np.json"
    assert run(capsys, "construct", "--type", "near-pencil", "--d", "4", "--n", "10", "--out", str(path))[0] == 0
    data = json.loads(path.read_text())
    assert data["manifest"]["command"] == "construct"
    assert config_from_json(data).points == near_pencil(4, 10).points
    code, out, _ = run(capsys, "count", "--input", str(path))
    report = json.loads(out)
    assert code == 0 and report["ordinary"] == 84 and report["counts"] == {"4": 84, "9": 1}
    assert report["counts"] == spectrum(near_pencil(4, 10)).to_json()["counts"]


def test_cyclotomic_round_trip_and_probe(tmp_path, capsys):
    cfg_path, probe_path = tmp_path / "ac.json", tmp_path / "q.json"
    run(capsys, "construct", "--type", "acnodal-coset", "--d", "4", "--n", "8", "--offset", "1", "--out", str(cfg_path))
    code, out, _ = run(capsys, "count", "--input", str(cfg_path), "--format", "csv")
    rows = {r["incidence"]: int(r["hyperplanes"]) for r in read_csv(out)}
    assert code == 0 and rows == {"4": 35, "5": 7}
    run(capsys, "construct", "--type", "acnodal-probe", "--d", "4", "--n", "8", "--angle", "2", "--out", str(probe_path))
    code, out, _ = run(capsys, "count", "--input", str(cfg_path), "--through", str(probe_path), "--exactly", "3")
    assert code == 0 and json.loads(out)["through_point_exactly"] >= 56


def test_table_d4(capsys):
    code, out, _ = run(capsys, "table", "--d", "4", "--n-min", "8", "--n-max", "20")
    rows = read_csv(out)
    assert code == 0 and len(rows) == 13
    assert all(r["match"] == "True" for r in rows)
    assert out.startswith("# manifest:")


def test_verify_identity(capsys):
    code, out, err = run(capsys, "verify", "--suite", "identity", "--trials", "100", "--seed", "7")
    data = json.loads(out)
    assert code == 0 and data["suites"][0]["passed"] == 100 and "100/100" in err


def test_deterministic_output(capsys):
    a = run(capsys, "verify", "--suite", "recurrence", "--trials", "30", "--seed", "3")[1]
    b = run(capsys, "verify", "--suite", "recurrence", "--trials", "30", "--seed", "3")[1]
    assert strip_time(a) == strip_time(b)
    a = run(capsys, "predict", "--d", "5", "--n", "12")[1]
    b = run(capsys, "predict", "--d", "5", "--n", "12")[1]
    assert strip_time(a) == strip_time(b)


def test_predict_and_classify(capsys):
    code, out, _ = run(capsys, "predict", "--d", "4", "--n", "10", "--offset", "1")
    data = json.loads(out)
    assert data["min_ordinary"]["value"] == 80 and data["coset"]["ordinary"] == 85 and data["coset"]["c"] == 9
    code, out, _ = run(capsys, "classify", "--p", "1,0,0,0,0,-1")
    data = json.loads(out)
    assert data["class"] == "Crunode" and data["discriminant_sign"] == 1 and data["sign"] == 1
    code, out, _ = run(capsys, "classify", "--p", "1,2,3,5,8,14")
    assert json.loads(out)["class"] == "Smooth"


def test_exit_codes(tmp_path, capsys):
    assert run(capsys, "count", "--input", str(tmp_path / "missing.json"))[0] == cli.EXIT_PARSE
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"d": 3, "points": [[1, 0, 0, 0], [2, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]}))
    assert run(capsys, "count", "--input", str(bad))[0] == cli.EXIT_GENERAL_POSITION
    assert run(capsys, "predict", "--d", "4", "--n", "14", "--budget", "1")[0] == cli.EXIT_BUDGET
    assert run(capsys, "construct", "--type", "near-pencil", "--d", "4", "--n", "5")[0] == cli.EXIT_DOMAIN
    assert run(capsys, "classify", "--p", "1,x,3")[0] == cli.EXIT_PARSE
    with pytest.raises(SystemExit) as info:
        cli.main(["table"])
    assert info.value.code == cli.EXIT_USAGE
