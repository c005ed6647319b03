import json
import subprocess
import sys

import pytest

from ellgrp.cli import main
from ellgrp.core import PointedAbelian, to_table


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def js(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0, out
    data = json.loads(out)
    assert data.pop("schema") == "ellgrp/1"
    return data


def test_factor(capsys):
    assert js(capsys, "factor", "12") == {"input": 12, "factors": [-2, 2]}


def test_curve_classify(capsys):
    data = js(capsys, "curve", "--p", "7", "--cubic", "1,2,-3,0,0,0,0,0,0,0", "--classify")
    assert data == {"points": 9, "flexes": 0, "canonical": {"variant": "OneTorsion", "k": 1, "shape": [3]}}
    data = js(capsys, "curve", "--p", "7", "--weierstrass", "0,2", "--classify")
    assert data["canonical"] == {"variant": "Flex", "shape": [3, 3]}


def test_iso(capsys):
    assert js(capsys, "iso", "--left", "9:1", "--right", "9:0") == {"isomorphic": False}
    assert js(capsys, "iso", "--left", "0,0:1,1", "--right", "0,0:1,0") == {"isomorphic": True}


def test_hom_empty_is_success(capsys):
    data = js(capsys, "hom", "--source", "3:0", "--target", "3:1")
    assert data["empty"] and data["count"] == 0 and not data["exists"]
    data = js(capsys, "hom", "--source", "3:1", "--target", "0:1")
    assert data == {"exists": False, "empty": True}


def test_circ_prime_and_euclid(capsys):
    assert js(capsys, "circ-prime", "14") == {"input": 14, "prime": True, "norm": 41}
    assert js(capsys, "euclid", "2,1") == {"input": [2, 1], "witness": 4}


def test_coproduct(capsys):
    data = js(capsys, "coproduct", "--left", "9:1", "--right", "3:1")
    assert data["object"] == "27,3:0,1" and data["recipe"] == "torsion-torsion"


def test_quotient(capsys):
    data = js(capsys, "quotient", "--group", "3,3", "--subgroup", "1,0")
    assert data["classes"] == [[0, 3, 6], [1, 4, 7], [2, 5, 8]]
    assert data["table"]["size"] == 3


def test_table_roundtrip_and_verify(capsys, tmp_path):
    data = js(capsys, "table", "--group", "3:1")
    path = tmp_path / "t.json"
    path.write_text(json.dumps(data))
    assert js(capsys, "verify-table", str(path))["ok"]
    assert js(capsys, "classify", "--table", str(path))["canonical"] == {"variant": "OneTorsion", "k": 1, "shape": []}


def test_verify_reports_violation_as_data(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"size": 2, "labels": ["a", "b"], "table": [[0, 0], [1, 1]]}))
    data = js(capsys, "verify-table", str(path))
    assert data["ok"] is False and data["violation"] == {"law": "EG1", "witness": [0, 1]}


def test_mor_structure(capsys):
    data = js(capsys, "mor-structure", "--source", "3:0", "--target", "3:0")
    assert data["size"] == 9 and data["axioms_ok"]
    assert data["canonical"] == data["predicted_canonical"]
    assert js(capsys, "mor-structure", "--source", "3:0", "--target", "3:1") == {"predicted": None, "empty": True}


def test_pretty_output(capsys):
    code, out, _ = run(capsys, "factor", "12", "--pretty")
    assert code == 0 and "factors: [-2, 2]" in out and "schema" not in out


@pytest.mark.parametrize("argv", [
    ["classify", "--group", "x:1"],
    ["table", "--group", "81"],
    ["curve", "--p", "4", "--weierstrass", "0,1"],
    ["curve", "--p", "7"],
    ["verify-table", "/nonexistent/file.json"],
    ["hom", "--source", "3", "--target", "3:1,1"],
])
def test_validation_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["factor", "abc"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


@pytest.mark.parametrize("argv", [
    ["circ-prime", "0"],
    ["euclid", "1"],
    ["curve", "--p", "7", "--weierstrass", "0,0", "--classify"],
])
def test_mathematical_errors_exit_1(capsys, argv):
    code, out, _ = run(capsys, *argv)
    if argv[0] == "curve":
        # singular curves are reported as data
        assert code == 0 and json.loads(out)["smooth"] is False
    else:
        assert code == 1 and "error" in json.loads(out)


def test_force_allows_large_tables(capsys):
    data = js(capsys, "table", "--group", "81", "--force")
    assert data["size"] == 81


def test_output_is_byte_stable(capsys):
    outs = {run(capsys, "coproduct", "--left", "3:1", "--right", "3")[1] for _ in range(3)}
    assert len(outs) == 1


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "ellgrp.cli", "factor", "-8"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["factors"] == [2, 2]


def test_table_matches_library(capsys):
    data = js(capsys, "table", "--group", "2,2:1,0")
    assert data["table"] == to_table(PointedAbelian.make([2, 2], [1, 0])).table.tolist()
