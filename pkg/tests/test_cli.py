import json
import shutil
import subprocess

import jsonschema
import pytest

from fanomld.cli import main
from fanomld.schema import CONE_SCHEMA, CSV_COLUMNS, MLD_OUTPUT_SCHEMA, cone_from_dict


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_mld_quotient(capsys):
    code, out, _ = run(capsys, "mld", "--quotient", "3:1,2")
    assert code == 0
    assert "mld: 1\n" in out and "validation: PASS" in out


def test_mld_wps_json(capsys):
    code, out, _ = run(capsys, "mld", "--wps", "2,3", "--format", "json")
    assert code == 0
    body = json.loads(out)
    jsonschema.validate(body, MLD_OUTPUT_SCHEMA)
    assert body["mld"] == "2" == body["mld_eq1"]


def test_mld_csv(capsys):
    code, out, _ = run(capsys, "mld", "--wps", "2,3,5", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == ",".join(CSV_COLUMNS)
    assert lines[1].startswith('"P(2,3,5)",3,10,3,true,true,true')


def test_mld_file_and_errors(capsys, tmp_path):
    good = tmp_path / "a2.json"
    run(capsys, "catalog", "quotient", "3:1,2")
    code, out, _ = run(capsys, "catalog", "quotient", "3:1,2")
    good.write_text(out, encoding="utf-8")
    assert run(capsys, "mld", "--file", str(good))[0] == 0

    bad = tmp_path / "bad.json"
    bad.write_text('{"name": "x", "r": "2", "dim": 2, "charts": [{"label": "c"}]}', encoding="utf-8")
    code, _, err = run(capsys, "mld", "--file", str(bad))
    assert code == 1 and "charts[0].factors" in err

    invalid = tmp_path / "invalid.json"
    invalid.write_text(
        json.dumps({"name": "x", "r": "2", "dim": 2, "charts": [{"label": "c", "factors": [{"order": 2, "weights": [0, 1]}]}]}),
        encoding="utf-8",
    )
    code, _, err = run(capsys, "mld", "--file", str(invalid))
    assert code == 2 and "isolatedness" in err

    assert run(capsys, "mld", "--file", str(tmp_path / "missing.json"))[0] == 1
    assert run(capsys, "mld")[0] == 1
    assert run(capsys, "mld", "--quotient", "4:1,2")[0] == 2


def test_crosscheck(capsys):
    code, out, _ = run(capsys, "crosscheck", "--quotient", "3:1,2")
    assert code == 0 and out.strip().endswith("4/4 PASS")
    code, out, _ = run(capsys, "crosscheck", "--wps", "2,3,5")
    assert code == 0 and out.strip().endswith("4/4 PASS")


def test_crosscheck_corrupted_chart_is_validation_failure(capsys, tmp_path):
    path = tmp_path / "corrupt.json"
    path.write_text(
        json.dumps({"name": "x", "r": "2", "dim": 2, "charts": [{"label": "c", "factors": [{"order": 3, "weights": [0, 1]}]}]}),
        encoding="utf-8",
    )
    code, _, err = run(capsys, "crosscheck", "--file", str(path))
    assert code == 2 and "validation: FAIL" in err


def test_examples(capsys):
    code, out, _ = run(capsys, "examples")
    assert code == 0 and "4/4 fixtures reproduced" in out


def test_curves(capsys):
    assert run(capsys, "curves", "d", "--r", "5", "--ell", "3", "--k", "-1", "--age-inv", "1/3")[1] == "2\n"
    assert run(capsys, "curves", "chi", "--b", "3", "--ell", "2")[1] == "2\n"
    assert run(capsys, "curves", "h0", "--b", "7", "--ell", "3")[1] == "3\n"
    assert run(capsys, "curves", "degree", "--r", "10", "--k", "-1", "--ell", "3")[1] == "10/3\n"
    assert "k_max: -1" in run(capsys, "curves", "k", "--m", "3", "--p", "2", "--ell", "3")[1]
    assert run(capsys, "curves", "rr", "--deg", "5/2", "--dim-y", "1", "--mark", "0:1", "--mark", "1/2:0")[1] == "2\n"
    assert run(capsys, "curves", "vdim", "--deg", "0", "--dim-y", "4", "--ages", "0,0,0")[1] == "4\n"
    assert run(capsys, "curves", "pointed", "--deg", "2", "--dim-y", "2", "--age", "1", "--fixed-dim", "0")[1] == "1\n"
    out = run(capsys, "curves", "split", "--ell", "2", "--a", "1,2")[1]
    assert out.splitlines()[1:] == ["1,4", "3,2", "# unique splitting: true"]
    assert run(capsys, "curves", "k", "--m", "4", "--p", "1", "--ell", "2")[0] == 2


def test_sft(capsys, tmp_path):
    path = tmp_path / "p23.json"
    path.write_text(run(capsys, "catalog", "wps", "2,3")[1], encoding="utf-8")
    code, out, _ = run(capsys, "sft", str(path))
    assert code == 0 and out.strip().endswith("mld: 2")
    code, out, _ = run(capsys, "sft", "--wps", "2,3", "--format", "csv")
    assert out.splitlines()[0] == "chart,element,period,lsft,half_plus_one"
    assert '"P(2,3)@1",2,2/3,2,2' in out


def test_catalog_outputs_validate(capsys):
    for argv in (("catalog", "wps", "2,3,5"), ("catalog", "quotient", "7:1,2,4")):
        code, out, _ = run(capsys, *argv)
        obj = json.loads(out)
        jsonschema.validate(obj, CONE_SCHEMA)
        cone_from_dict(obj)
    code, out, _ = run(capsys, "catalog", "examples")
    assert [fx["expected_d"] for fx in json.loads(out)] == ["3", "2", "4", "3"]
    assert run(capsys, "catalog", "wps", "2,4")[0] == 2
    assert run(capsys, "catalog", "quotient", "nope")[0] == 1


def test_scan(capsys):
    code, out, _ = run(capsys, "scan", "--n", "2", "--m-max", "10")
    assert code == 0 and "violations: 0" in out and "VIOLATION" not in out
    code, out, _ = run(capsys, "scan", "--wps-max", "12", "--wps-sizes", "3", "--format", "json")
    rows = json.loads(out)["rows"]
    assert rows and all(r["mld"] == "3" and r["smooth"] for r in rows)
    code, out, _ = run(capsys, "scan", "--format", "csv")
    assert code == 0 and out == ",".join(CSV_COLUMNS) + "\n"


def test_scan_resource_bound(capsys, monkeypatch):
    monkeypatch.setenv("MLD_MAX_ORDER", "5")
    code, _, err = run(capsys, "scan", "--n", "2", "--m-max", "10")
    assert code == 3 and "resource bound" in err


def test_bad_arguments(capsys):
    assert run(capsys, "mld", "--format", "xml", "--wps", "2,3")[0] == 1
    assert run(capsys, "nosuchverb")[0] == 1


@pytest.mark.skipif(shutil.which("fanomld") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["fanomld", "mld", "--quotient", "3:1,2"], capture_output=True, text=True)
    assert proc.returncode == 0 and "mld: 1" in proc.stdout
