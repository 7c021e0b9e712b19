import json

import pytest

from latt.constructions import chain, n5
from latt.verify import MAX_N, SUITES, run_suite
from latt.verify.maxima import expected_top_four, records, top_values
from latt.verify.quotients import verify_quotient_size_lemmas
from latt.verify.report import TheoremReport, pmap
from latt.verify.sums import check_hsum_wcl, check_n5_tables, check_triple, verify_sum_structures


def test_report_bookkeeping():
    r = TheoremReport("demo", {})
    assert r.check(True, "a") and not r.check(False, "b", "boom", lattice=chain(2))
    r.flag("c", "odd")
    assert r.checks == 2 and not r.passed and r.failed_items() == {"b"}
    data = json.loads(r.to_json())
    assert data["failures"][0]["witness"]["lattice"] == {"n": 2, "covers": [[0, 1]]}
    assert r.lines()[0].startswith("suite demo {}: FAIL")


def _square(x):
    return x * x


def test_pmap_keeps_order(monkeypatch):
    monkeypatch.setenv("LATT_THREADS", "2")
    assert pmap(_square, range(20)) == [x * x for x in range(20)]


def test_suite_table():
    assert set(SUITES) == set(MAX_N) == {"lat", "wcl", "wdcl", "wdl", "sums", "quotients"}


@pytest.mark.parametrize("n", range(1, 7))
def test_lattice_maxima_small(n):
    assert run_suite("lat", n).passed


def test_top_four_targets():
    assert [int(v) for v in expected_top_four(7)] == [33, 17, 11, 9]
    assert top_values(records(7, "wcl")) == [33, 17, 11, 9]


def test_deterministic_across_threads(monkeypatch):
    monkeypatch.setenv("LATT_THREADS", "1")
    one = [(r.count, r.ops) for r in records(6, "wcl")]
    monkeypatch.setenv("LATT_THREADS", "3")
    assert [(r.count, r.ops) for r in records(6, "wcl")] == one


def test_n5_worked_example():
    r = TheoremReport("n5", {})
    check_n5_tables(r)
    assert r.passed and r.checks == 10


def test_hsum_cases_on_chains():
    r = TheoremReport("h", {})
    for a in range(3, 6):
        for b in range(3, 6):
            check_hsum_wcl(r, chain(a), chain(b), "hsum")
    check_triple(r, chain(3), chain(3), n5())
    assert r.passed, r.lines()


def test_ordinal_sum_defect_is_reported():
    r = verify_sum_structures(size_cap=4, hsum_cap=4, triples=False)
    assert r.failed_items() <= {"osum Con_WCL", "osum Con_WCL shape", "osum Con_WDCL", "osum Con_WDCL shape"}
    assert "osum Con_WCL" in r.failed_items()


def test_quotient_lemmas_small():
    # the first counterexample (N5) lives at n=5
    assert verify_quotient_size_lemmas(4).passed
    r = verify_quotient_size_lemmas(5)
    assert r.failed_items() == {"CgW drop (3) gamma"}
