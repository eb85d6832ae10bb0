import json

import pytest

from brauerkit.scenarios import (SCENARIOS, Claim, build_baut, build_pic_ku, scenario_baut_m2ku,
                                 scenario_bw_table, scenario_pic_ku, scenario_relative_brauer)
from brauerkit.specseq import assemble_degree, e_infinity, pages


@pytest.fixture(scope="module")
def pic():
    return scenario_pic_ku()


@pytest.fixture(scope="module")
def baut():
    return scenario_baut_m2ku()


def by_location(rep):
    return {c.location: c for c in rep.claims}


def test_pic_ku_matches(pic):
    assert pic.ok, [c.location for c in pic.mismatches]
    claims = by_location(pic)
    assert claims["degree 0 (pi_1 BPic^{hC2})"].computed == "Z/8"
    assert claims["degree -1 (pi_0 BPic^{hC2})"].computed == "Z/2"
    assert claims["degree 0 (pi_1 BPic^{hC2})"].provenance == "cited"
    assert "ambiguous=True" in claims["degree 0 without extension data"].computed


def test_pic_ku_reports_open_cells(pic):
    indet = pic.details["indeterminate"]
    assert indet and all(row["why"] for row in indet)
    # degrees 0 and -1 are determinate
    assert not [row for row in indet if row["n"] in (0, -1)]


def test_pic_ku_chart_omits_one_dot(pic):
    assert pic.details["e2_vs_chart"]["undrawn"] == [[13, 12]]
    assert pic.details["e2_vs_chart"]["drawn_but_zero"] == []


def test_pic_ku_has_no_degree_zero_differentials():
    e2, tr = build_pic_ku()
    einf = e_infinity(e2, tr.clip, 6)
    assert [k for k, _ in einf.degree(0)] == [(0, 0), (1, 1), (3, 3)]
    assert assemble_degree(einf, 0).ambiguous


def test_baut_single_mismatch(baut):
    bad = baut.mismatches
    assert [c.location for c in bad] == ["E4 nonzero cells with s >= 5, t-s >= -1"]
    assert bad[0].computed == "[[5, 5]]"
    claims = by_location(baut)
    assert claims["E_2^{4,3} (theta_even)"].computed == "Z/2"
    assert claims["E_3^{5,5} (lift_difference)"].computed == "Z/2"
    assert claims["conclusion"].computed == "two Morita-inequivalent lifts"
    assert claims["E4^{s,s-1}, E4^{s,s} for s > 5"].status == "match"


def test_baut_coefficient_checks():
    _, _, checks = build_baut()
    assert checks["middle_vanishes"] and checks["connecting_iso"]


def test_relative_brauer_and_table():
    assert scenario_relative_brauer().ok
    rep = scenario_bw_table()
    assert rep.ok
    claims = by_location(rep)
    assert claims["BW(Z[1/2])"].computed == "Z/2 + Z/8"
    assert claims["BW(Z[1/2])"].provenance == "cited"


def test_reports_serialize(pic, baut):
    for rep in (pic, baut, scenario_relative_brauer()):
        doc = json.loads(rep.dumps())
        assert doc["scenario"] == rep.name and doc["schema_version"] == 1
        assert doc["all_match"] == rep.ok
    assert set(SCENARIOS) == {"pic-ku", "baut-m2ku", "relative-brauer", "bw-table"}


def test_claim_status():
    assert Claim("x", "1", "1", "").status == "match"
    assert Claim("x", "1", "2", "").status == "mismatch"
    assert Claim("x", "1", None, "").status == "recorded"


def test_pages_are_reproducible():
    a, _ = build_pic_ku()
    b, _ = build_pic_ku()
    assert [p.to_json() for p in pages(a, 4)] == [p.to_json() for p in pages(b, 4)]
