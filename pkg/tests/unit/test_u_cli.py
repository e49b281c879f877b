import json
import logging

import pytest

from puiseuxlab import cli


def run_json(capsys, *argv):
    code = cli.main([*argv, "--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def test_monoid_member(capsys):
    code, payload = run_json(capsys, "monoid", "member", "1/2", "--q", "2", "--r", "3")
    assert code == 0
    assert payload["monoid"] == "M_{2,3}"
    assert payload["member"] is True
    assert payload["certificate"] == {"a1": 1, "b1": 1}
    assert payload["target"] == "1/2"


def test_monoid_gens(capsys):
    code, payload = run_json(capsys, "monoid", "gens", "--q", "2", "--r", "3", "--budget-depth", "1")
    assert code == 0
    assert payload["generators"] == {"a1": "17/72", "b1": "19/72"}


def test_monoid_atomcheck_label(capsys):
    code, payload = run_json(capsys, "monoid", "atomcheck", "a2", "--q", "3", "--r", "2", "--budget-depth", "2")
    assert code == 0
    assert payload["verdict"] == "atom-at-depth"
    assert payload["generator"] == "a2"


def test_monoid_factorizations(capsys):
    code, payload = run_json(capsys, "monoid", "factorizations", "6", "--gens", "2, 3")
    assert payload["count"] == 2
    assert payload["factorizations"] == [["3", "3"], ["2", "2", "2"]]


def test_monoid_accp_chain(capsys):
    code, payload = run_json(capsys, "monoid", "accp", "--gens", "1", "--chain", "3, 2, 1, 0", "--n-max", "3")
    assert code == 0
    assert [link["status"] for link in payload["links"]] == ["proper", "proper", "proper"]
    assert payload["stabilizes"] is False


def test_global_flags_before_command(capsys):
    code = cli.main(["--format", "json", "ff", "order", "2", "--p", "7"])
    assert code == 0
    assert json.loads(capsys.readouterr().out) == {"p": 7, "a": 2, "order": 3}


def test_ff_factor(capsys):
    code, payload = run_json(capsys, "ff", "factor", "x^6 + x^3 + 1", "--p", "2")
    assert payload["factors"] == [["x^6 + x^3 + 1", 1]]
    assert payload["unit"] == 1


def test_ff_trinomial(capsys):
    code, payload = run_json(capsys, "ff", "trinomial", "--p", "7", "--k", "1")
    assert payload == {"p": 7, "k": 1, "a": 2, "f": "x^2 + 3*x + 6", "irreducible": True}


def test_ff_binomial_text(capsys):
    code = cli.main(["ff", "binomial", "4", "3", "--p", "5"])
    lines = capsys.readouterr().out.splitlines()
    assert code == 0
    assert "criterion: yes" in lines
    assert "oracle: yes" in lines


def test_ff_irreducible_method(capsys):
    code, payload = run_json(capsys, "ff", "irreducible", "x^4 + x^2 + 1", "--p", "2")
    assert payload["irreducible"] is False
    assert payload["method"] == "trial-division"


def test_semidomain_atomtest(capsys):
    code, payload = run_json(capsys, "semidomain", "atomtest", "x^2 + x + 1", "--p", "2", "--q", "2", "--r", "3")
    assert code == 0
    assert payload["verdict"] == "reducible"
    assert payload["witness"] == ["x + x^(1/2) + 1", "x + x^(1/2) + 1"]


def test_semidomain_structure(capsys):
    code, payload = run_json(capsys, "semidomain", "structure", "x^(1/2) + 3*x^2")
    assert payload["order"] == "1/2"
    assert payload["leading_coefficient"] == "3"


def test_semidomain_ascent(capsys):
    code, payload = run_json(capsys, "semidomain", "ascent", "2*x^4 - 2")
    assert payload["d"] == "2"
    assert sorted(payload["atoms"]) == ["x + 1", "x - 1", "x^2 + 1"]


def test_subring_atomic_text(capsys):
    code = cli.main(["subring", "atomic", "(1/2)*x^2", "--ring", "ZQ"])
    assert code == 0
    assert "atomic: no" in capsys.readouterr().out.splitlines()


def test_subring_witnesses(capsys):
    code, payload = run_json(capsys, "subring", "witness", "x + (3/4)*x^2", "--mode", "almost")
    assert payload["s"] == 1
    code, payload = run_json(capsys, "subring", "witness", "s*x^2", "--mode", "quasi")
    assert payload["g"] == "(1)/(s)*x^2"
    assert payload["product"] == "x^4"
    code, payload = run_json(capsys, "subring", "witness", "x", "--kind", "not-almost", "--kappa", "s")
    assert payload["in_S"] is False


def test_subring_refute_single(capsys):
    code, payload = run_json(capsys, "subring", "refute", "--F", "1", "--factors", "s*x^2*y + t*x^2")
    (candidate,) = payload["candidates"]
    assert candidate["verdict"] == "invalid"
    assert candidate["reason"] == "reducible-factor"


def test_subring_refute_corpus(capsys):
    code, payload = run_json(capsys, "subring", "refute")
    assert code == 0
    assert len(payload["candidates"]) == 20
    assert payload["valid"] == 0


def test_subring_probe(capsys):
    code, payload = run_json(capsys, "subring", "probe", "s*x^2*y + t*x^2")
    assert payload["verdict"] == "reducible"


def test_subring_descent(capsys):
    code, payload = run_json(capsys, "subring", "descent", "--depth", "2")
    assert [step["cofactor"] for step in payload["steps"]] == ["1/4*x^2", "1/8*x^2"]


def test_papercheck_json(capsys):
    code, payload = run_json(capsys, "papercheck", "binomials", "--pmax", "7", "--tmax", "4", "--no-times")
    assert code == 0
    assert payload["summary"] == {"pass": 2, "fail": 0, "unknown-at-budget": 0}
    assert payload["exit_code"] == 0
    assert all("wall_time" not in report for report in payload["reports"])


def test_papercheck_text(capsys):
    code = cli.main(["papercheck", "trinomials", "--seed", "3"])
    lines = capsys.readouterr().out.splitlines()
    assert code == 0
    assert lines[0].split() == ["pass", "trinomials.oracle"]
    assert lines[-1] == "trinomials (seed 3): pass: 1, fail: 0, unknown-at-budget: 0"


@pytest.mark.parametrize(
    ("argv", "expected"),
    [
        (["monoid", "member", "--target", "1/2", "--depth", "6"], {"member": True, "certificate": {"a1": 1, "b1": 1}}),
        (["monoid", "atomcheck", "--index", "a1", "--depth", "6"], {"verdict": "atom-at-depth", "generator": "a1"}),
        (["monoid", "factorizations", "--target", "6", "--gens", "2, 3"], {"count": 2}),
        (
            ["semidomain", "atomtest", "--p", "2", "--q", "2", "--r", "3", "--expr", "x^2+x+1", "--depth", "6"],
            {"verdict": "reducible"},
        ),
        (["subring", "atomic", "--ring", "ZQ", "--expr", "(1/2)*x^2"], {"atomic": False}),
        (["subring", "atomic", "--ring", "ZQ", "--expr", "x + (1/2)*x^2"], {"atomic": True}),
        (["subring", "witness", "--mode", "almost"], {"s": 4}),
        (["subring", "witness", "--mode", "quasi"], {"g": "(1)/(s)*x^2"}),
        (["subring", "witness", "--mode", "not-almost"], {"in_S": False}),
        (["semidomain", "ascent", "--expr", "2*x^4 - 2"], {"d": "2"}),
    ],
)
def test_flag_forms(capsys, argv, expected):
    code, payload = run_json(capsys, *argv)
    assert code == 0
    assert {key: payload[key] for key in expected} == expected


def test_monoid_gens_n(capsys):
    code, payload = run_json(capsys, "monoid", "gens", "--q", "2", "--r", "3", "--n", "4")
    assert code == 0
    assert sorted(payload["generators"]) == ["a1", "a2", "a3", "a4", "b1", "b2", "b3", "b4"]
    assert payload["generators"]["a1"] == "17/72"


def test_monoid_defaults_to_m23(capsys, caplog):
    caplog.set_level(logging.INFO)
    code, payload = run_json(capsys, "monoid", "gens", "--depth", "1")
    assert payload["generators"] == {"a1": "17/72", "b1": "19/72"}
    assert "No monoid given; using M_{2,3}." in caplog.text


def test_depth_flag_sets_search_depth(capsys):
    code, payload = run_json(capsys, "monoid", "member", "--target", "1/2", "--q", "2", "--r", "3", "--depth", "3")
    assert payload["depth"] == 3


def test_semidomain_expr_flag(capsys):
    code, payload = run_json(capsys, "semidomain", "structure", "--expr", "x^(1/2) + 3*x^2")
    assert payload["order"] == "1/2"


def test_subring_refute_candidates_file(capsys, tmp_path):
    path = tmp_path / "candidates.json"
    entries = [
        {"F": "1", "factors": ["s*x^2*y + t*x^2"]},
        {"id": "mine", "F": "1", "factors": ["x^2", "x^2"]},
    ]
    path.write_text(json.dumps(entries), encoding="utf-8")
    code, payload = run_json(capsys, "subring", "refute", "--candidates", str(path))
    assert code == 0
    first, second = payload["candidates"]
    assert (first["id"], first["verdict"], first["reason"]) == ("1", "invalid", "reducible-factor")
    assert second["id"] == "mine"
    assert second["verdict"] == "invalid"
    assert payload["valid"] == 0


@pytest.mark.parametrize(
    ("content", "code"),
    [
        ('{"F": "1"}', "candidates.not-a-list"),
        ('[{"F": "1"}]', "candidates.bad-entry"),
        ('[{"F": 1, "factors": []}]', "candidates.bad-entry"),
        ("[", "data.bad-json"),
    ],
)
def test_subring_refute_bad_candidates(capsys, tmp_path, content, code):
    path = tmp_path / "candidates.json"
    path.write_text(content, encoding="utf-8")
    assert cli.main(["subring", "refute", "--candidates", str(path)]) == 2
    assert code in capsys.readouterr().err


@pytest.mark.parametrize(
    ("argv", "message"),
    [
        (["monoid", "gens", "--q", "2"], "Give both --q and --r, or --gens."),
        (["monoid", "member"], "--target is required."),
        (["monoid", "member", "1/2", "--target", "1/3"], "Give --target once"),
        (["semidomain", "structure"], "--expr is required."),
        (["subring", "refute", "--factors", "2"], "--factors needs --F."),
        (["subring", "refute", "--F", "1", "--candidates", "c.json"], "Give --F or --candidates, not both."),
    ],
)
def test_usage_errors(capsys, argv, message):
    assert cli.main(argv) == 2
    assert message in capsys.readouterr().err


@pytest.mark.parametrize(
    ("argv", "message"),
    [
        (["ff", "order", "2", "--p", "4"], "not prime"),
        (["semidomain", "structure", "x^(1/0)"], "rational.zero-denominator"),
        (["semidomain", "structure", "x + * 2"], "column 5"),
    ],
)
def test_domain_errors(capsys, argv, message):
    assert cli.main(argv) == 2
    assert message in capsys.readouterr().err


def test_bad_suite():
    with pytest.raises(SystemExit) as exc_info:
        cli.main(["papercheck", "everything"])
    assert exc_info.value.code == 2


def test_version(capsys):
    with pytest.raises(SystemExit) as exc_info:
        cli.main(["--version"])
    assert exc_info.value.code == 0
    assert capsys.readouterr().out.startswith("puiseuxlab ")


def test_render_text():
    lines = cli.render_text({"a": True, "b": [1, 2], "c": {"d": None}, "e": []})
    assert lines == ["a: yes", "b:", "  1, 2", "c:", "  d: -", "e: none"]
