import json
from importlib import resources
from pathlib import Path

import pytest

from brauerkit.brauerwall import half_quaternion
from brauerkit.cli import main
from brauerkit.exactalg import CoeffRing

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bw(capsys):
    code, out, _ = run(capsys, "bw", "fq:3", "z_inv2")
    assert code == 0
    groups = json.loads(out)["groups"]
    assert [g["group"] for g in groups] == ["Z/4", "Z/2 + Z/8"]
    code, out, _ = run(capsys, "bw", "--table")
    assert code == 0 and len(json.loads(out)["table"]) == 6


def test_bad_ring_is_invalid_input(capsys):
    code, _, err = run(capsys, "bw", "fq:4")
    assert code == 1
    assert json.loads(err)["exit_code"] == 1


def test_azumaya(tmp_path, capsys):
    f = tmp_path / "half.json"
    f.write_text(half_quaternion(CoeffRing.prime_field(5), 2).dumps())
    code, out, _ = run(capsys, "azumaya", str(f), "--hochschild", "2")
    doc = json.loads(out)
    assert code == 0 and doc["azumaya"] is True
    assert doc["invariants"]["type"] == 1 and doc["invariants"]["quadratic"] == [1]
    assert doc["hochschild"][1:] == ["0", "0"]


@pytest.mark.parametrize("text", ["{", "[]", '{"schema_version": 1}'])
def test_malformed_descriptor(tmp_path, capsys, text):
    f = tmp_path / "bad.json"
    f.write_text(text)
    code, _, err = run(capsys, "azumaya", str(f))
    assert code == 1 and "error" in json.loads(err)


def test_missing_file(capsys):
    assert run(capsys, "azumaya", "/nonexistent/a.json")[0] == 1


def test_cohomology(capsys):
    code, out, _ = run(capsys, "cohomology", "Z-", "--range", "0:3")
    groups = [row["group"]["label"] for row in json.loads(out)["cohomology"]]
    assert code == 0 and groups == ["0", "Z/2", "0", "Z/2"]
    assert run(capsys, "cohomology", "Z", "--range", "3:1")[0] == 1


def test_scenarios_exit_codes(capsys):
    assert run(capsys, "scenario", "pic-ku")[0] == 0
    assert run(capsys, "scenario", "relative-brauer")[0] == 0
    code, out, _ = run(capsys, "scenario", "baut-m2ku")
    assert code == 3 and json.loads(out)["all_match"] is False
    assert run(capsys, "scenario", "nope")[0] == 1


def _tampered(tmp_path) -> Path:
    data = json.loads(resources.files("brauerkit.data").joinpath("pic_ku_chart.json").read_text())
    # a d_3 out of (s,t) = (5,3), which already receives d_3 from (2,1)
    data["arrows"].append({"family": "tamper", "r": 3, "vars": {},
                           "from": {"n": {"1": -2}, "s": {"1": 5}},
                           "to": {"n": {"1": -3}, "s": {"1": 8}}})
    f = tmp_path / "tampered.json"
    f.write_text(json.dumps(data))
    return f


def test_tampered_transcription_is_a_consistency_failure(tmp_path, capsys):
    f = _tampered(tmp_path)
    code, _, err = run(capsys, "scenario", "pic-ku", "--data", str(f))
    assert code == 2 and json.loads(err)["error"] == "DSquareNonzero"
    assert run(capsys, "chart", "pic-ku", "--page", "3", "--data", str(f))[0] == 2


def test_chart_matches_golden(tmp_path, capsys):
    out = tmp_path / "baut.svg"
    assert run(capsys, "chart", "baut-m2ku", "--format", "svg", "-o", str(out))[0] == 0
    assert out.read_text() == (GOLDEN / "baut_e2.svg").read_text()
    code, text, _ = run(capsys, "chart", "pic-ku")
    assert code == 0 and text == (GOLDEN / "pic_ku_e2.txt").read_text()


def test_hfpss(tmp_path, capsys):
    code, out, _ = run(capsys, "hfpss", "pic-ku", "--window=-2:2", "--pages", "3")
    doc = json.loads(out)
    assert code == 0 and [p["r"] for p in doc["pages"]] == [2, 3]
    assert all(-2 <= c["n"] <= 2 for p in doc["pages"] for c in p["cells"])
    svg = tmp_path / "p.svg"
    code, text, _ = run(capsys, "hfpss", "baut-m2ku", "--pages", "4", "--ascii", "--svg", str(svg))
    assert code == 0 and text.startswith("# baut-m2ku E_4") and svg.exists()


def test_argument_errors(capsys):
    assert run(capsys, "hfpss", "pic-ku", "--pages", "1")[0] == 1
    assert run(capsys, "hfpss", "relative-brauer")[0] == 1
    assert run(capsys, "hfpss", "pic-ku", "--window=-90:90")[0] == 1
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "--help")[0] == 0
