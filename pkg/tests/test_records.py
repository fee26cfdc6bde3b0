import json
import shutil

import pytest

from bblab.machine import parse_machine
from bblab.records import (ACCEL, CROSS_CHECKS, DIRECT, RULES, UNVERIFIABLE, Bound, DatasetError,
                           RecordEntry, Route, cross_check, load_records, records_path,
                           score_trace_equal, select, verify_all, verify_entry)

from conftest import BB24, BRADY33_ANALOGUE, BB52

ENTRIES = load_records()
BY_ID = {e.id: e for e in ENTRIES}

# Machines printed in the records tables and analyses; each must appear once.
SPOT_AUDIT = [
    "1RB1LB_1LA1RH", "1RB1RH_1LB0RC_1LC1LA", "1RB1LB_1LA0LC_1RH1LD_1RD0RA",
    "1RB1LC_1RC1RB_1RD0LE_1LA1LD_1RH0LA", "1RB0LD_1LC1RD_1LA1LC_1RH1RE_1RA0RB",
    "1RB0LD_1RC0RF_1LC1LA_0LE1RH_1LA0RB_0RC0RE", "1RB1RA_1LC1LB_0RF1LD_1RA0LE_1RH1LF_0LA0LC",
    "1RB2LB1RH_2LA2RB1LB", "1RB2LA1LC_0LA2RB1LB_1RH1RA1RC", "1RB2LA1RA1RA_1LB1LA3RB1RH",
    "1RB2LA1RA2LB2LA_0LA2RB3RB4RA1RH", "1RB0RB4RA2LB2LA_2LA1LB3RB4RA1RH",
    "1RB3RA1LA1LB3LB_2LA4LB3RA2RB1RH", "1RB3LB1RH1LA1LA_2LA3RB4LB4LB3RA",
    "1RB2LB1LC_1LA2RB1RB_1RH2LA0LC", "1RB1LC1RH_1LA1LC2RB_1RB2LC1RC",
    "1RB2RC1LA_2LA1RB1RH_2RB2RA1LC", "1RB3LA1LA4LA1RA_2LB2RA1RH0RA0RB",
    "1RB4LA1LA1RH2RB_2LB3LA1LB2RA0RB",
]


def test_ids_unique_and_routes_present():
    assert len({e.id for e in ENTRIES}) == len(ENTRIES)
    assert all(e.routes for e in ENTRIES)


def test_spot_audit():
    codes = [e.machine for e in ENTRIES if e.machine]
    for code in SPOT_AUDIT:
        assert codes.count(code) == 1, code


def test_machines_parse_in_their_class():
    for e in ENTRIES:
        if e.machine:
            m = e.parsed()
            assert m.class_id == e.class_id and m.is_rado(), e.id


def test_lower_bounds_are_decimal_thresholds():
    k = BY_ID["tm62_kropitz_2010"]
    assert k.s == Bound(38 * 10 ** 21131, lower=True)
    assert k.sigma == Bound(31 * 10 ** 10565, lower=True)
    assert str(k.s) == "> 3.80e21132"


def test_bound_semantics():
    assert Bound(10).accepts(10) and not Bound(10).accepts(11)
    assert Bound(10, True).accepts(11) and not Bound(10, True).accepts(10)


def test_entry_json_round_trip():
    for e in ENTRIES:
        assert RecordEntry.from_json(json.loads(json.dumps(e.to_json()))) == e


def test_unverifiable_have_reasons():
    for e in ENTRIES:
        for r in e.routes:
            if r.kind == UNVERIFIABLE:
                assert r.reason, e.id


def test_entries_without_tables_are_unverifiable():
    for e in ENTRIES:
        if e.machine is None:
            assert [r.kind for r in e.routes] == [UNVERIFIABLE]
    assert BY_ID["tm52_batfai_stay"].variant


def test_small_exact_entries_have_both_routes():
    # every exact entry with s <= 1e8 and a rule file is checked by simulation too
    for e in ENTRIES:
        kinds = {r.kind for r in e.routes}
        if RULES in kinds and e.s is not None and not e.s.lower and e.s.value <= 10 ** 8:
            assert DIRECT in kinds, e.id


def test_bad_documents(tmp_path):
    bad = [
        {"id": "x", "class": [2, 2], "machine": "1RB1LB_1LA1RH", "verification": []},
        {"id": "x", "class": [2, 2], "machine": None, "verification": [{"route": "direct"}]},
        {"id": "x", "class": [2, 2], "machine": "1RB1LB_1LA1RH", "verification": [{"route": "magic"}]},
        {"id": "x", "class": [2, 2], "machine": "1RB1LB_1LA1RH", "s": {"roughly": "6"},
         "verification": [{"route": "direct"}]},
    ]
    for d in bad:
        with pytest.raises(DatasetError):
            RecordEntry.from_json(d)
    p = tmp_path / "dup.json"
    ok = {"id": "x", "class": [2, 2], "machine": "1RB1LB_1LA1RH", "verification": [{"route": "direct"}]}
    p.write_text(json.dumps({"entries": [ok, ok]}))
    with pytest.raises(DatasetError):
        load_records(p)


def test_verify_22():
    s = verify_all(class_id=(2, 2))
    assert (s.passed, s.failed, s.skipped) == (3, 0, 0)
    assert s.line() == "3 passed, 0 failed, 0 skipped"


def test_verify_42():
    s = verify_all(class_id=(4, 2))
    assert (s.passed, s.failed) == (7, 0)


def test_empty_filter_is_vacuous_pass():
    s = verify_all(class_id=(9, 9))
    assert s.reports == [] and s.ok


def test_champion_52_both_routes_agree():
    rep = verify_entry(BY_ID["tm52_mb_champion"])
    assert rep.status == "pass"
    assert {r.route for r in rep.results} == {"direct", "rules:tm52_mb_champion"}
    assert {(r.s, r.sigma) for r in rep.results} == {(47_176_870, 4098)}


def test_rule_chain_entries():
    rep = verify_entry(BY_ID["tm33_ligocki_champion"])
    assert rep.status == "pass"
    assert (rep.results[0].s, rep.results[0].sigma) == (119_112_334_170_342_540, 374_676_383)
    rep = verify_entry(BY_ID["tm62_kropitz_2010"])
    assert rep.status == "pass" and rep.results[0].transitions == 22158


def test_date_filter():
    chosen = select(ENTRIES, date="2007")
    assert chosen and all("2007" in e.date for e in chosen)


def test_mismatch_is_reported():
    e = BY_ID["tm42_brady_1964"]
    wrong = RecordEntry.from_json(e.to_json() | {"s": {"exact": "108"}})
    rep = verify_entry(wrong)
    assert rep.status == "fail"
    assert "expected 108" in rep.results[0].detail and "got 107" in rep.results[0].detail
    assert not verify_all([wrong]).ok


def test_lower_bound_must_be_exceeded():
    e = BY_ID["tm62_mb_oct2000"]
    exact_s = verify_entry(e).results[0].s
    at = RecordEntry.from_json(e.to_json() | {"s": {"lower_bound": str(exact_s)}})
    assert verify_entry(at).status == "fail"


def test_route_failure_is_an_error():
    e = RecordEntry.from_json({"id": "x", "class": [2, 2], "machine": "1RB1LB_1LA1RH",
                               "s": {"exact": "6"},
                               "verification": [{"route": "rules", "rules": "no_such_file"}]})
    rep = verify_entry(e)
    assert rep.results[0].status == "error" and rep.status == "fail"


def test_accel_route():
    e = RecordEntry.from_json({"id": "x", "class": [2, 4], "machine": BB24,
                               "s": {"exact": "3932964"}, "sigma": {"exact": "2050"},
                               "verification": [{"route": "accel", "block": 2}, {"route": "direct"}]})
    rep = verify_entry(e)
    assert [r.status for r in rep.results] == ["pass", "pass"]
    assert [r.route for r in rep.results] == ["accel:b2", "direct"]


def test_worker_count_does_not_change_summary():
    ids = ["tm22_table_r1", "tm32_table_r4", "tm42_brady_1964", "tm24_brady", "tm62_mb_third"]
    one = verify_all(ids=ids, workers=1).to_json()
    two = verify_all(ids=ids, workers=2).to_json()
    strip = lambda d: [(e["id"], e["status"], [(r["route"], r.get("s")) for r in e["routes"]])
                       for e in d["entries"]]
    assert strip(one) == strip(two)


def test_data_dir_override(tmp_path, monkeypatch):
    shutil.copytree(records_path().parent / "rules", tmp_path / "rules")
    doc = json.loads(records_path().read_text())
    doc["entries"] = [d for d in doc["entries"] if d["id"] == "tm24_brady"]
    (tmp_path / "records.json").write_text(json.dumps(doc))
    monkeypatch.setenv("BB_LAB_DATA", str(tmp_path))
    s = verify_all()
    assert [r.id for r in s.reports] == ["tm24_brady"] and s.ok


def test_similar_behaviour_pairs():
    checks = cross_check(ENTRIES)
    assert [(c.first, c.second) for c in checks] == [(a, b) for a, b, _ in CROSS_CHECKS]
    assert all(c.ok for c in checks), [c.detail for c in checks]


def test_score_trace_lockstep():
    same, t = score_trace_equal(parse_machine(BB24), parse_machine(BRADY33_ANALOGUE), 10 ** 7)
    assert same and t == 3_932_964
    same, t = score_trace_equal(parse_machine(BB24), parse_machine(BB52), 10 ** 7)
    assert not same and t < 100
