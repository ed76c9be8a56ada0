import csv
import gzip
import json

import pytest

from dillon import claims
from dillon.cli import RunConfig, main
from dillon.report import Report


@pytest.fixture(autouse=True)
def cache(tmp_path, monkeypatch):
    monkeypatch.setenv("DILLON_CACHE_DIR", str(tmp_path / "cache"))
    return tmp_path / "cache"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def strip_time(d):
    d = dict(d)
    d.pop("elapsed_ms", None)
    return d


def test_verify_example(capsys):
    code, out, _ = run(capsys, "verify", "example-m6k2")
    rep = json.loads(out)
    assert code == 0 and rep["status"] == "verified"
    assert len(rep["details"]["bent"]) == 6


@pytest.mark.parametrize("argv", [
    ["thm4", "--m", "6"],
    ["prop4", "--m", "10"],
    ["thm3", "--m", "2,3"],
    ["thm1", "--m", "8"],
    ["thm2"],
    ["thm5"],
    ["thm6", "--k", "2"],
    ["prop3-equiv", "--m", "4", "--k", "2"],
    ["identities"],
])
def test_verify_claims_pass(capsys, argv):
    code, out, _ = run(capsys, "verify", *argv)
    assert code == 0, out
    assert json.loads(out)["status"] == "verified"


def test_verify_text_and_csv(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "thm6", "--format", "text")
    assert code == 0 and "status: verified" in out
    dest = tmp_path / "r.csv"
    code, out, _ = run(capsys, "verify", "thm6", "--format", "csv", "--out", str(dest))
    assert out == ""
    rows = list(csv.reader(dest.open()))
    assert rows[0] == ["claim", "status", "counterexample"]
    assert rows[1][:2] == ["thm6", "verified"]


def test_verify_direct_walsh_flag(capsys):
    code, out, _ = run(capsys, "verify", "thm5", "--direct-walsh", "--sample", "2")
    rep = json.loads(out)
    assert code == 0
    assert len(rep["details"]["direct_walsh"]["sampled"]) == 2


def test_counterexample_exit_code(capsys, monkeypatch):
    def failing(**_):
        rep = Report("thm6", counterexamples=[{"a": "1"}])
        return rep.finish(0.0)
    monkeypatch.setitem(claims.REGISTRY, "thm6", claims.Claim(failing, (), "broken"))
    code, out, _ = run(capsys, "verify", "thm6")
    rep = json.loads(out)
    assert code == 1
    assert rep["status"] == "counterexample" and rep["counterexamples"]


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as e:
        main(["verify", "thm99"])
    assert e.value.code == 2
    assert run(capsys, "verify", "thm4", "--m", "5")[0] == 2
    assert run(capsys, "verify", "prop3-equiv", "--m", "9", "--k", "3")[0] == 2
    assert run(capsys, "search", "--m", "6", "--k", "4")[0] == 2
    assert run(capsys, "search", "--m", "6")[0] == 2
    assert run(capsys, "spectrum", "--m", "6", "--k", "2", "--a", "0")[0] == 2
    assert run(capsys, "field-info", "--n", "4", "--modulus", "11")[0] == 2
    assert run(capsys, "kloosterman", "--m", "21")[0] == 2
    with pytest.raises(SystemExit):
        main(["spectrum", "--a", "zz"])


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--m", "6", "--k", "2")
    res = json.loads(out)
    assert code == 0
    assert res["coefficients"] == ["6", "b", "14", "1a", "1c", "1f"]
    assert len(res["cosets"]) == 2 and res["field"]["modulus"] == "43"
    code, out, _ = run(capsys, "search", "--m", "6", "--k", "2", "--ambient")
    res = json.loads(out)
    assert res["field"]["n"] == 12 and len(res["coefficients"]) == 6


@pytest.mark.parametrize("m,k", [(6, 6), (9, 3), (6, 3)])
def test_search_empty(capsys, m, k):
    code, out, _ = run(capsys, "search", "--m", str(m), "--k", str(k))
    assert code == 0 and json.loads(out)["coefficients"] == []


def test_search_jobs_do_not_change_output(capsys):
    outs = []
    for jobs in ("1", "4"):
        _, out, _ = run(capsys, "search", "--m", "8", "--k", "2", "--jobs", jobs)
        outs.append(strip_time(json.loads(out)))
    assert outs[0] == outs[1]


def test_kloosterman(capsys, cache, tmp_path):
    code, out, _ = run(capsys, "kloosterman", "--m", "4", "--zeros-only")
    assert code == 0 and "1" in out.split()
    code, out, _ = run(capsys, "kloosterman", "--m", "6")
    res = json.loads(out)
    assert res["cached"] is False
    assert {"6", "b", "14", "1a", "1c", "1f"} <= set(res["zeros"])
    assert res["mod16_filter"]["violations"] == 0
    first = (tmp_path / "a.csv")
    second = (tmp_path / "b.csv")
    run(capsys, "kloosterman", "--m", "6", "--out", str(first))
    code, out, _ = run(capsys, "kloosterman", "--m", "6", "--out", str(second))
    assert json.loads(out)["cached"] is True
    assert first.read_bytes() == second.read_bytes()
    assert first.read_text().startswith("m,n,modulus\n6,6,43\nelement,K\n")


def test_kloosterman_cache_dir_flag(capsys, tmp_path):
    where = tmp_path / "elsewhere"
    run(capsys, "kloosterman", "--m", "5", "--cache-dir", str(where))
    assert len(list(where.glob("kloosterman-m5-*.csv"))) == 1


def test_spectrum_example(capsys, tmp_path):
    dest = tmp_path / "w.csv.gz"
    code, out, _ = run(capsys, "spectrum", "--m", "6", "--k", "2", "--a", "20", "--out", str(dest))
    res = json.loads(out)
    assert code == 0 and res["bent"] and res["max_abs"] == res["min_abs"] == 64
    assert all(res["parseval"].values())
    with gzip.open(dest, "rt") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["a", "b", "W"]
    assert len(rows) == 1 + 3 * 4096
    assert {abs(int(r[2])) for r in rows[1:]} == {64}


def test_spectrum_non_bent(capsys):
    code, out, _ = run(capsys, "spectrum", "--m", "6", "--k", "2", "--a", "1")
    res = json.loads(out)
    assert code == 0 and not res["bent"] and res["max_abs"] != 64


def test_field_info(capsys):
    code, out, _ = run(capsys, "field-info", "--n", "12")
    res = json.loads(out)
    assert res["modulus"] == "1009" and set(res["subfields"]) == {"1", "2", "3", "4", "6", "12"}
    code, out, _ = run(capsys, "field-info", "--n", "4", "--modulus", "19", "--format", "text")
    assert "modulus: 19" in out


def test_modulus_override_reaches_search(capsys):
    # x^6 + x^4 + x^3 + x + 1
    code, out, _ = run(capsys, "search", "--m", "6", "--k", "2", "--modulus", "5b")
    res = json.loads(out)
    assert res["field"]["modulus"] == "5b" and len(res["coefficients"]) == 6


def test_run_config_rejects_zero_jobs():
    with pytest.raises(ValueError):
        RunConfig(jobs=0)
