from __future__ import annotations

import csv
import io
import json

import pytest

from penner.cli import RunConfig, main


def run(argv):
    out = io.StringIO()
    rc = main(argv, out)
    return rc, out.getvalue()


def test_dilatation_float():
    rc, text = run(["dilatation", "--cycle", "5", "--flow", "1", "--precision", "6"])
    assert rc == 0
    assert text.splitlines()[0] == "5.961091"
    assert text.splitlines()[1].startswith("word: [")


def test_dilatation_certified_json():
    rc, text = run(["dilatation", "--enriched", "3", "--flow", "1", "--mode", "certified",
                    "--precision", "30", "--output", "json"])
    assert rc == 0
    rec = json.loads(text)
    assert rec["dilatation"] == "6.996024223722820976908887401785"
    assert "poly" in rec["certificate"]


def test_dilatation_usage_errors():
    assert run(["dilatation", "--cycle", "5", "--flow", "2"])[0] == 2
    assert run(["dilatation", "--cycle", "5", "--enriched", "5", "--flow", "1"])[0] == 2
    assert run(["dilatation", "--flow", "1"])[0] == 2
    assert run(["nonsense"])[0] == 2


def test_dilatation_max_dim():
    assert run(["dilatation", "--cycle", "9", "--flow", "1", "--max-dim", "5"])[0] == 3


def test_minimize():
    rc, text = run(["minimize", "--genus", "5", "--precision", "15"])
    assert rc == 0
    d = json.loads(text)
    assert d["value"] == "6.996024223722821"
    assert d["family"] == "enriched-cycle" and d["witness_word"][-1] == 3
    rc, text = run(["minimize", "--genus", "6"])
    assert rc == 0 and json.loads(text)["l"] == 5


def test_minimize_small_genus():
    assert run(["minimize", "--genus", "3"])[0] == 2


def test_tables_csv():
    rc, text = run(["tables", "--which", "1"])
    assert rc == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0]) == ["l", "d", "computed", "published", "deviation", "ok"]
    assert len(rows) == 6 and all(r["ok"] == "True" for r in rows)
    assert "\r" not in text


def test_tables_json():
    rc, text = run(["tables", "--which", "2", "--output", "json"])
    assert rc == 0
    rows = json.loads(text)
    assert [r["l"] for r in rows] == [3, 5, 7, 9, 11, 13]
    assert all(r["ok"] for r in rows)
    assert run(["tables", "--which", "3"])[0] == 2


def test_verify_skein():
    rc, text = run(["verify", "--suite", "skein"])
    assert rc == 0
    assert all(line.startswith("[PASS]") for line in text.splitlines())


def test_verify_prolongation_reports_no_site():
    rc, text = run(["verify", "--suite", "prolongation", "--output", "json"])
    assert rc == 0
    res = {r["check"]: r["status"] for r in json.loads(text)}
    assert res["prolongation P_7"] == "PASS"
    assert res["prolongation P_5"] == "NO-SITE"
    assert "FAIL" not in res.values()


def test_verify_conjugacy_respects_max_enum():
    rc, text = run(["verify", "--suite", "conjugacy", "--max-enum", "5"])
    assert rc == 0
    assert "skipped" in text.splitlines()[-1]


def test_conjecture():
    rc, text = run(["conjecture", "--kmax", "10", "--precision", "10"])
    assert rc == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0]) == ["k", "genus", "mu", "gap"]
    assert rows[0]["k"] == "2" and rows[-1]["k"] == "10"
    assert rows[0]["mu"] == "6.9960242237"


def test_conjecture_certified():
    rc, text = run(["conjecture", "--kmax", "4", "--mode", "certified", "--output", "json"])
    assert rc == 0
    rows = json.loads(text)
    assert len(rows) == 3 and float(rows[-1]["gap"]) > 0


def test_conjecture_limit():
    assert run(["conjecture", "--kmax", "151"])[0] == 3


def test_precision_from_environment(monkeypatch):
    monkeypatch.setenv("PENNER_PRECISION", "4")
    rc, text = run(["dilatation", "--cycle", "3", "--flow", "1"])
    assert rc == 0 and text.splitlines()[0] == "6.2223"


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(precision=0)
    with pytest.raises(ValueError):
        RunConfig(mode="fast")
