import json
import math

import pytest

from smalldisc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    doc = json.loads(out)
    # parse -> serialize -> parse is a fixpoint
    assert json.loads(json.dumps(doc)) == doc
    assert doc["schema_version"] == 1
    return code, doc


def test_field_examples(capsys):
    code, doc = run(capsys, "field", "cyclotomic:5")
    assert code == 0
    assert doc["field"]["disc"]["value"] == 125
    assert abs(doc["rd"] - 3.3437) < 1e-4
    assert doc["eqn_simple"]["satisfied"] is True

    code, doc = run(capsys, "field", "quadratic:-23")
    assert doc["class_number"]["h"] == 3 and doc["class_number"]["satisfied"]

    code, doc = run(capsys, "field", "subgroup:8:7")
    assert (doc["field"]["degree"], doc["field"]["r1"], doc["field"]["disc"]["value"]) == (2, 2, 8)


def test_field_zeta_cross_check(capsys):
    code, doc = run(capsys, "--pretty", "field", "subgroup:13:3", "--zeta", "500")
    assert code == 0
    assert doc["zeta"]["agree"] and doc["zeta"]["ideal_bound_satisfied"]


@pytest.mark.parametrize(
    "argv,code",
    [
        (["field", "cyclotomic:x"], 2),
        (["field", "circle:5"], 2),
        (["field", "cyclotomic:20000"], 3),
        (["--conductor-cap", "50", "field", "cyclotomic:60"], 3),
        (["field", "cyclotomic:5", "--zeta", "100", "--pretty"], 0),
        (["--coeff-cap", "10", "field", "cyclotomic:5", "--zeta", "100"], 3),
        (["group", "(1 2"], 2),
        (["--order-cap", "100", "group", "(1 2),(1 2 3 4 5)"], 3),
        (["bounds", "--degL", "4", "--degL-log", "2"], 2),
        (["bounds", "--degL", "4", "--degK", "3"], 2),
        (["verify", "nonsense"], 2),
    ],
)
def test_exit_codes(capsys, cache_path, argv, code):
    got, doc = run(capsys, *argv)
    assert got == code
    if code in (2, 3):
        assert doc["error"] == ("input" if code == 2 else "cap")


def test_argparse_errors_map_to_input_code(capsys):
    assert main(["survey", "notanumber"]) == 2
    assert main([]) == 2


def test_group_examples(capsys, cache_path):
    code, doc = run(capsys, "group", "(1 2),(1 2 3 4)")
    assert code == 0
    assert doc["degrees"] == [1, 1, 2, 3, 3] and doc["r"] == 3 and doc["min_abelian_index"] == 6
    assert doc["isaacs_sandwich"] == {"checked": True, "lower": 3, "index": 6, "upper": 36, "holds": True}
    code, doc = run(capsys, "group", "(1 2 3)")
    assert doc["r"] == 1 and doc["min_abelian_index"] == 1
    code, doc = run(capsys, "group", "(1 2 3),(3 4 5)")
    assert doc["r"] == 5 and doc["order"] == 60


def test_group_uses_cache(capsys, cache_path):
    run(capsys, "group", "(1 2 3 4)")
    code, stats = run(capsys, "cache", "stats")
    assert stats["entries"] == 1 and stats["path"] == str(cache_path)
    _, a = run(capsys, "group", "(1 2 3 4)")
    _, b = run(capsys, "group", "(1 2 3 4)", "--no-cache")
    assert a["table"] == b["table"]
    code, cleared = run(capsys, "cache", "clear")
    assert cleared["cleared"] == 1 and cleared["entries"] == 0


def test_large_group_skips_subgroup_search(capsys, cache_path):
    code, doc = run(capsys, "group", "(1 2 3 4 5 6),(1 2)", "--no-cache")
    assert code == 0 and doc["order"] == 720
    assert doc["min_abelian_index"] is None and not doc["isaacs_sandwich"]["checked"]


def test_survey_small(capsys):
    code, doc = run(capsys, "survey", "5")
    assert code == 0
    assert doc["summary"]["fields"] == 5
    assert all(r["eqn_simple"] != "violated" for r in doc["rows"])
    code, doc = run(capsys, "survey", "1")
    assert len(doc["rows"]) == 1 and doc["rows"][0]["eqn_simple"] == "inapplicable"


def test_survey_parallel_matches_serial(capsys):
    _, serial = run(capsys, "survey", "30")
    _, par = run(capsys, "survey", "30", "--jobs", "2")
    assert serial == par


def test_bounds_examples(capsys):
    _, doc = run(capsys, "bounds", "--degL-loglog", "9", "--degK", "1", "--rdL-log", "1")
    entries = {e["name"]: e for e in doc["entries"]}
    assert entries["thm1"]["value"] == pytest.approx(0.25600, abs=5e-6)
    _, doc = run(capsys, "bounds", "--degL-log", "32", "--degK", "1", "--rdL-log", "1")
    assert {e["name"]: e for e in doc["entries"]}["thm2"]["value"] == pytest.approx(2.0, rel=1e-12)
    _, doc = run(capsys, "bounds", "--degL", "4")
    assert {e["name"]: e for e in doc["entries"]}["eqn_simple"]["value"] == pytest.approx(1.18921, abs=5e-6)


def test_bounds_log_scale_and_exact(capsys, tmp_path):
    _, a = run(capsys, "bounds", "--degL", "100", "--rdL", "5")
    _, b = run(capsys, "bounds", "--log-scale", "--degL", str(math.log(100)), "--rdL", str(math.log(5)))
    ta = {e["name"]: e["value"] for e in a["entries"]}
    tb = {e["name"]: e["value"] for e in b["entries"]}
    assert ta["thm2"] == pytest.approx(tb["thm2"], rel=1e-12)
    _, c = run(capsys, "bounds", "--degL", "4", "--disc", "125", "--r1", "0", "--r2", "2", "--r", "1")
    names = [e["name"] for e in c["entries"]]
    assert "poitou" in names and "poitou_grh" in names
    const = tmp_path / "c.json"
    const.write_text('{"C2": 2.0}')
    _, d = run(capsys, "bounds", "--degL-log", "32", "--rdL-log", "1", "--constants", str(const))
    assert {e["name"]: e["value"] for e in d["entries"]}["thm2"] == pytest.approx(4.0)


def test_verify_single_suite(capsys):
    code, doc = run(capsys, "verify", "bounds", "--quiet")
    assert code == 0 and doc["failed"] == 0
    assert any("spot values" in c["name"] for c in doc["checks"])
