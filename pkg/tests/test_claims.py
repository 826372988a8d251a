import json

import pytest

from char3curves.claims import (
    PIPELINES,
    RunConfig,
    exit_code,
    load_catalog,
    oracle_check,
    run_claim,
    run_claims,
)

from conftest import PRESENTATIONS

STATUSES = {"VERIFIED", "MISMATCH", "INCONCLUSIVE", "OUT_OF_SCOPE"}


@pytest.fixture(scope="module")
def catalog():
    return load_catalog()


@pytest.fixture(scope="module")
def full_run():
    return run_claims()


def test_catalog_shape(catalog):
    ids = [c.id for c in catalog]
    assert len(ids) == len(set(ids))
    assert all(c.pipeline in PIPELINES for c in catalog)
    assert all(c.provenance in {"CLAIMED", "DERIVED", "TRIVIAL"} for c in catalog)
    assert all(c.anchor for c in catalog)


def test_every_claim_gets_one_status(catalog, full_run):
    assert [r.id for r in full_run] == [c.id for c in catalog]
    assert all(r.status in STATUSES for r in full_run)


def test_only_the_plain_swap_mismatches(full_run):
    assert [r.id for r in full_run if r.status == "MISMATCH"] == ["auto-genus10-r"]
    assert exit_code(full_run) == 1


def test_inconclusive_claims_explain_themselves(full_run):
    inc = [r for r in full_run if r.status == "INCONCLUSIVE"]
    assert {r.id for r in inc} == {"s81_10-order3-count", "s243-element-counts", "s243-28-element-counts"}
    assert all("--presentation" in r.note for r in inc)


def test_json_record_keys(full_run):
    rec = full_run[0].to_json()
    assert {"id", "anchor", "computed", "expected", "provenance", "status", "millis"} <= rec.keys()
    json.dumps([r.to_json() for r in full_run])


def test_parallel_matches_serial(full_run):
    par = run_claims(config=RunConfig(workers=2))
    assert [(r.id, r.status, r.computed) for r in par] == [(r.id, r.status, r.computed) for r in full_run]


def test_wrong_order_presentation_is_inconclusive(catalog):
    claim = next(c for c in catalog if c.id == "s243-element-counts")
    res = run_claim(claim, RunConfig(presentations={"S243_26": str(PRESENTATIONS / "s81_9.txt")}))
    assert res.status == "INCONCLUSIVE"
    assert "order 81" in res.note


def test_supplied_presentation_is_checked(catalog):
    # S(81,9) passed off as S(81,10): 62 elements of order 3, not 8
    claim = next(c for c in catalog if c.id == "s81_10-order3-count")
    res = run_claim(claim, RunConfig(presentations={"S81_10": str(PRESENTATIONS / "s81_9.txt")}))
    assert res.status == "MISMATCH"
    assert res.computed == {"order3": 62}


def test_order_243_pipeline_runs(catalog, tmp_path):
    # C9 x C9 x C3 is not the claimed group, but it exercises the order-243 path
    pres = tmp_path / "c9c9c3.txt"
    pres.write_text("gens: a b c\na^9\nb^9\nc^3\n[a,b]\n[a,c]\n[b,c]\n")
    claim = next(c for c in catalog if c.id == "s243-element-counts")
    res = run_claim(claim, RunConfig(presentations={"S243_26": str(pres)}))
    assert res.status == "MISMATCH"
    assert res.computed["order3"] == 26
    assert len(res.computed["maximal_types"]) == 13


def test_unknown_claim_id():
    with pytest.raises(KeyError):
        run_claims(["no-such-claim"])


def test_oracle_agrees_with_goldens():
    diffs = oracle_check()
    assert diffs and all(d.agrees for d in diffs)
    assert {d.method for d in diffs} == {"table lookup + fiber places", "hyperelliptic model"}
