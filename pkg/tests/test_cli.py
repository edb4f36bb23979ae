import json
import subprocess
import sys

import pytest

from motzkin_gf import cli
from motzkin_gf.jsonio import dumps, poly_from_json, poly_to_json, series_from_json, series_to_json
from motzkin_gf.motzkin import F, MeanderQuery, gf_meander
from motzkin_gf.polyring import Z1, ZH, Poly


def run(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_secular_k0(capsys):
    code, out, _ = run(["secular", "--k", "0"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert poly_from_json(doc["polynomial"]) == 1 - ZH


def test_gf_geometric(capsys):
    code, out, _ = run(["gf", "--k", "0", "--m", "0", "--n", "0", "--L", "3"], capsys)
    doc = json.loads(out)
    assert [poly_from_json(p) for p in doc["series"]] == [1, ZH, ZH ** 2, ZH ** 3]


def test_all_routes(capsys):
    code, out, _ = run(["secular", "--k", "3", "--route", "all"], capsys)
    assert code == 0
    assert all(json.loads(out)["routes_agree"].values())


def test_inf_echo(capsys):
    code, out, _ = run(["gf", "--k", "inf", "--m", "1", "--n", "2", "--L", "4"], capsys)
    doc = json.loads(out)
    assert doc["k"] == "inf" and doc["k_eff"] == 6
    s = series_from_json(doc["series"])
    assert s == gf_meander(MeanderQuery("inf", 1, 2, 4)).series


def test_deterministic(capsys):
    args = ["marked", "--k", "2", "--m", "0", "--n", "1", "--L", "4", "--weights", "t=1/2,s=2,T=3,S=1"]
    _, a, _ = run(args, capsys)
    _, b, _ = run(args, capsys)
    assert a == b


def test_roundtrip_bytes():
    p = F(3) * Poly.monomial({"TD": 1, "CU": 2}) / 3
    text = dumps(poly_to_json(p))
    assert dumps(poly_to_json(poly_from_json(json.loads(text)))) == text
    s = gf_meander(MeanderQuery(2, 0, 1, 4)).series
    assert dumps(series_to_json(series_from_json(series_to_json(s)))) == dumps(series_to_json(s))


def test_half_area_field():
    doc = poly_to_json(Poly.monomial({"Z": 1, "QH": 3}))
    assert doc["terms"][0]["q"] == "3/2"
    with pytest.raises(ValueError):
        poly_to_json(Z1)


def test_usage_errors(capsys):
    assert run(["gf", "--k", "1", "--m", "3"], capsys)[0] == 1
    assert run(["bogus"], capsys)[0] == 1
    assert run([], capsys)[0] == 1
    assert run(["secular", "--k", "inf"], capsys)[0] == 1
    assert run(["marked", "--k", "2", "--weights", "x=1"], capsys)[0] == 1
    assert run(["marked", "--k", "0"], capsys)[0] == 1


def test_config_and_override(tmp_path, capsys):
    cfg = tmp_path / "job.cfg"
    cfg.write_text("# a job\ncommand = gf\nk = 2\nm = 0\nn = 1\nL = 2\n", encoding="utf-8")
    code, out, _ = run(["--config", str(cfg), "--L", "4"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["L"] == 4 and len(doc["series"]) == 5


def test_out_file(tmp_path, capsys):
    path = tmp_path / "out.json"
    assert run(["enumerate", "--k", "2", "--L", "6", "--out", str(path)], capsys)[0] == 0
    doc = json.loads(path.read_text())
    # UUUDDD is the only length-6 excursion that needs a ceiling of 3
    assert doc["counts"] == [1, 1, 2, 4, 9, 21, 50]


def test_bounds(capsys):
    _, out, _ = run(["bounds", "--k", "5", "--m", "3", "--n", "4", "--L", "6"], capsys)
    rows = {r["l"]: r for r in json.loads(out)["bounds"]}
    assert rows[5]["amin"] == "23/2"
    assert rows[6]["amin"] == "25/2"
    assert 0 not in rows


def test_cluster_command(capsys):
    code, out, _ = run(["cluster", "--k", "1", "--A", "3"], capsys)
    doc = json.loads(out)
    assert code == 0 and len(doc["cluster_terms"]) == 3


def test_verify_ok(capsys):
    code, out, _ = run(["verify", "--k", "2", "--L", "6"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["report"]["passed"]


def test_verify_failure_exit(monkeypatch, capsys):
    import motzkin_gf.motzkin as mk
    real = mk.secular_det
    monkeypatch.setattr(mk, "secular_det", lambda k: real(k) + ZH ** 9)
    code, out, _ = run(["verify", "--k", "1", "--L", "4"], capsys)
    assert code == 2
    failing = [c for c in json.loads(out)["report"]["checks"] if not c["passed"]]
    assert failing and "ZH^9" in failing[0]["detail"]


def test_internal_assertion_exit(monkeypatch, capsys):
    from motzkin_gf.errors import NotSymmetric
    def boom(k, route="recursive"):
        raise NotSymmetric("forced")
    monkeypatch.setattr(cli.motzkin, "secular", boom)
    assert run(["secular", "--k", "1"], capsys)[0] == 3


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "motzkin_gf", "secular", "--k", "0"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["k"] == 0
