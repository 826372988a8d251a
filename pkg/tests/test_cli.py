import json

import pytest

from char3curves.cli import main

from conftest import CURVES, PRESENTATIONS


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_verify_subset_json(capsys):
    code, out = run(capsys, "verify-all", "--claims", "genus2-zeta,group-genus10", "--format", "json")
    assert code == 0
    recs = json.loads(out.out)
    assert [r["id"] for r in recs] == ["genus2-zeta", "group-genus10"]
    assert all(r["status"] == "VERIFIED" for r in recs)


def test_verify_mismatch_exit_one(capsys):
    code, out = run(capsys, "verify-all", "--claims", "auto-genus10-r")
    assert code == 1
    assert "MISMATCH" in out.out


def test_verify_inconclusive_exit_zero(capsys):
    code, out = run(capsys, "verify-all", "--claims", "s243-element-counts", "--format", "json")
    assert code == 0
    assert json.loads(out.out)[0]["status"] == "INCONCLUSIVE"


def test_user_presentation_flag(capsys):
    code, out = run(capsys, "verify-all", "--claims", "s81_10-order3-count", "--presentation", f"S81_10={PRESENTATIONS / 's81_9.txt'}", "--format", "json")
    assert code == 1
    assert json.loads(out.out)[0]["computed"] == {"order3": 62}


def test_oracle_flag(capsys):
    # the oracle follows --claims, so only the genus-2 goldens are re-derived
    code, out = run(capsys, "verify-all", "--claims", "genus2-counts", "--oracle", "--format", "json")
    assert code == 0
    recs = json.loads(out.out)
    oracle = [r for r in recs if r["id"].startswith("oracle:")]
    assert len(oracle) == 2 and all(r["status"] == "VERIFIED" for r in oracle)


def test_oracle_only_with_verify_all(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["group", "--preset", "UT33", "--oracle"])
    assert exc.value.code == 2


def test_zeta_json(capsys):
    code, out = run(capsys, "zeta", "--curve", str(CURVES / "genus2.curve"), "--param", "c=1", "--imax", "4", "--format", "json")
    assert code == 0
    res = json.loads(out.out)["result"]
    assert res["counts"][0] == 8


def test_group_preset(capsys):
    code, out = run(capsys, "group", "--preset", "C3wrC3", "--format", "json")
    assert code == 0
    assert json.loads(out.out)["result"]["order"] == 81


def test_group_presentation_file(capsys):
    code, out = run(capsys, "group", "--presentation", str(PRESENTATIONS / "s81_8.txt"), "--format", "json")
    assert code == 0
    assert json.loads(out.out)["result"]["order"] == 81


def test_cover_data(capsys, tmp_path):
    data = {"group_order": 27, "base_genus": 0, "base_prank": 0, "orbits": [{"length": 9, "jumps": [3, 3]}] * 2}
    path = tmp_path / "ut33.json"
    path.write_text(json.dumps(data))
    code, out = run(capsys, "cover", "--data", str(path), "--format", "json")
    assert code == 0
    res = json.loads(out.out)["result"]
    assert res["genus"] == 10 and res["prank"] == 10


def test_inconsistent_cover_is_usage_error(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"group_order": 27, "base_genus": 0, "base_prank": 0, "orbits": [{"length": 9, "jumps": [9, 9]}]}))
    code, out = run(capsys, "cover", "--data", str(path))
    assert code == 2


def test_missing_curve_file(capsys, tmp_path):
    code, out = run(capsys, "zeta", "--curve", str(tmp_path / "nope.curve"), "--imax", "2")
    assert code == 2


def test_orbits_table(capsys):
    code, out = run(capsys, "orbits", "--curve", str(CURVES / "genus10.curve"), "--maps", "g,h", "--k", "6")
    assert code == 0
    assert "10" in out.out


def test_classify_sextic(capsys):
    code, out = run(capsys, "classify-sextic", "--format", "json")
    assert code == 0
    assert len(json.loads(out.out)["result"]["basis"]) == 2


def test_prank_hyperelliptic(capsys):
    code, out = run(capsys, "prank", "--hyperelliptic", "c*X^6+X^4+X^2+1", "--k", "1", "--format", "json")
    assert code == 0
