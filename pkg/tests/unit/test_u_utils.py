from fractions import Fraction

import pytest

import puiseuxlab.utils as utils
from puiseuxlab.constants import Verdict
from puiseuxlab.errors import LabDomainError


@pytest.mark.parametrize(
    ("elems", "result"),
    [
        ({}, {}),
        ({"a": 1, "b": None, "c": "d"}, {"a": 1, "c": "d"}),
        ({"s": "", "c": 0}, {"s": "", "c": 0}),
    ],
)
def test_prune_empty_values(elems, result):
    assert utils.prune_empty_values(elems) == result


@pytest.mark.parametrize("p", [2, 3, 5, 7919])
def test_require_prime(p):
    assert utils.require_prime(p) == p


@pytest.mark.parametrize("p", [0, 1, 4, -3, 91])
def test_require_prime_rejects_composites(p):
    with pytest.raises(LabDomainError) as exc_info:
        utils.require_prime(p, "q")
    assert exc_info.value.code == "arith.not-prime"
    assert exc_info.value.data == {"q": p}


@pytest.mark.parametrize("p", [2.0, "3", True])
def test_require_prime_rejects_non_integers(p):
    with pytest.raises(TypeError):
        utils.require_prime(p)


@pytest.mark.parametrize(
    ("n", "result"),
    [(0, []), (1, []), (-1, []), (12, [2, 3]), (-30, [2, 3, 5]), (97, [97])],
)
def test_prime_factors(n, result):
    assert utils.prime_factors(n) == result


def test_to_jsonable():
    class Report:
        def as_dict(self):
            return {"value": Fraction(1, 2)}

    value = {
        "verdict": Verdict.UNKNOWN,
        "rationals": (Fraction(17, 72), 3),
        "primes": frozenset({5, 2}),
        "report": Report(),
        1: None,
    }
    assert utils.to_jsonable(value) == {
        "verdict": "unknown-at-budget",
        "rationals": ["17/72", 3],
        "primes": [2, 5],
        "report": {"value": "1/2"},
        "1": None,
    }


def test_load_data_file():
    corpus = utils.load_data_file("nonascent_candidates.json")
    assert len(corpus) == 20
    assert {"id", "F", "factors"} <= set(corpus[0])


def test_load_data_file_from_path(tmp_path):
    path = tmp_path / "mine.json"
    path.write_text('[{"F": "1", "factors": ["2"]}]', encoding="utf-8")
    assert utils.load_data_file(path) == [{"F": "1", "factors": ["2"]}]


def test_load_data_file_errors(tmp_path):
    with pytest.raises(LabDomainError) as exc_info:
        utils.load_data_file(tmp_path / "missing.json")
    assert exc_info.value.code == "data.unreadable"
    broken = tmp_path / "broken.json"
    broken.write_text("[{", encoding="utf-8")
    with pytest.raises(LabDomainError) as exc_info:
        utils.load_data_file(broken)
    assert exc_info.value.code == "data.bad-json"


def test_lcm_all():
    assert utils.lcm_all([]) == 1
    assert utils.lcm_all([4, 6, 9]) == 36


@pytest.mark.parametrize(
    ("exponent", "text"),
    [
        (Fraction(0), ""),
        (Fraction(1), "x"),
        (Fraction(3), "x^3"),
        (Fraction(17, 72), "x^(17/72)"),
        (Fraction(-2), "x^(-2)"),
    ],
)
def test_format_power(exponent, text):
    assert utils.format_power("x", exponent) == text


@pytest.mark.parametrize(
    ("coefficient", "monomial", "text"),
    [
        (5, "", "5"),
        (1, "x^2", "x^2"),
        (-1, "x", "-x"),
        (Fraction(3, 4), "x^2", "3/4*x^2"),
        ("s + 1", "x^2", "(s + 1)*x^2"),
    ],
)
def test_format_term(coefficient, monomial, text):
    assert utils.format_term(coefficient, monomial) == text


@pytest.mark.parametrize(
    ("terms", "text"),
    [
        ([], "0"),
        (["x^2"], "x^2"),
        (["x^2", "-x", "1"], "x^2 - x + 1"),
        (["-x", "3"], "-x + 3"),
    ],
)
def test_join_terms(terms, text):
    assert utils.join_terms(terms) == text
