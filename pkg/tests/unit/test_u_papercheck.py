import random

import pytest

from puiseuxlab.constants import ExitCode, SearchBudget, Suite, Verdict
from puiseuxlab.errors import LabDomainError
from puiseuxlab.papercheck import (
    DEFAULT_PARAMS,
    Check,
    CheckReport,
    PapercheckParams,
    checks_for,
    exit_code,
    run_check,
    run_papercheck,
    summarize,
)

SMALL = PapercheckParams(
    pairs=((2, 3),),
    n=3,
    atom_pairs=((2, 3),),
    atom_n=2,
    depth=3,
    pmax=7,
    tmax=6,
    family=((5, 1),),
    trinomial_primes=(3, 7),
    kmax=2,
    finite_field_samples=20,
    integer_samples=10,
    subring_samples=20,
    atomic_samples=5,
    split_samples=5,
    image_n=2,
    workers=2,
)


def _report(verdict):
    return CheckReport("x.check", "anchor", {}, verdict, {}, {})


class TestChecksFor:
    def test_all(self):
        checks = checks_for(Suite.ALL)
        assert len(checks) == 26
        assert [check.check_id for check in checks] == sorted(check.check_id for check in checks)

    def test_suite_label(self):
        assert [check.check_id for check in checks_for("binomials")] == [
            "binomials.criterion",
            "binomials.primitive-family",
        ]

    @pytest.mark.parametrize(("suite", "count"), [("prop-mqr", 8), ("subring", 9), ("nonascent", 4), ("ascent", 2)])
    def test_suite_sizes(self, suite, count):
        assert len(checks_for(suite)) == count

    def test_unknown_suite(self):
        with pytest.raises(LabDomainError) as exc_info:
            checks_for("everything")
        assert exc_info.value.code == "papercheck.unknown-suite"
        assert "all" in exc_info.value.data["suites"]


class TestParams:
    def test_with_mqr(self):
        params = DEFAULT_PARAMS.with_mqr(3, 2, 4)
        assert params.pairs == ((3, 2),)
        assert params.atom_pairs == ((3, 2),)
        assert (params.n, params.atom_n) == (4, 3)

    def test_half_pair(self):
        with pytest.raises(LabDomainError):
            DEFAULT_PARAMS.with_mqr(q=3)

    def test_as_dict(self):
        report = SMALL.as_dict()
        assert report["pairs"] == [[2, 3]]
        assert report["seed"] == 0


def test_report_time_field():
    report = CheckReport("x.check", "anchor", {"n": 3}, Verdict.PASS, {"checked": 1}, {}, 1.23456)
    assert report.as_dict()["wall_time"] == 1.235
    assert "wall_time" not in report.as_dict(include_time=False)
    assert report.as_dict()["verdict"] == "pass"


def test_errors_fail_the_check(caplog):
    def boom(params, rng):
        raise LabDomainError("boom.always", "Always fails.")

    check = Check("x.boom", Suite.SUBRING, "never holds", boom, ("seed",), ("search",))
    report = run_check(check, SMALL)
    assert report.verdict is Verdict.FAIL
    assert report.payload == {"error": {"code": "boom.always", "message": "Always fails."}}
    assert report.parameters == {"seed": 0}
    assert report.budget == {"search": SearchBudget().as_dict()}
    assert "x.boom" in caplog.text


def test_payload_pruned_and_seeded():
    seen = []

    def sample(params, rng):
        seen.append(rng.random())
        return Verdict.PASS, {"kept": 0, "dropped": None}

    check = Check("x.sample", Suite.SUBRING, "anchor", sample)
    first = run_check(check, SMALL)
    run_check(check, SMALL)
    assert first.payload == {"kept": 0}
    assert seen[0] == seen[1] == random.Random("0:x.sample").random()


def test_summary_and_exit_code():
    reports = [_report(Verdict.PASS), _report(Verdict.UNKNOWN)]
    assert summarize(reports) == {"pass": 1, "fail": 0, "unknown-at-budget": 1}
    assert exit_code(reports) is ExitCode.PASS
    assert exit_code([*reports, _report(Verdict.FAIL)]) is ExitCode.FAIL


@pytest.mark.parametrize("suite", ["prop-mqr", "binomials", "trinomials", "ascent", "subring", "nonascent"])
def test_small_suites_pass(suite):
    reports = run_papercheck(suite, SMALL)
    failed = [report.as_dict(include_time=False) for report in reports if report.verdict is Verdict.FAIL]
    assert failed == []
    assert exit_code(reports) is ExitCode.PASS


def test_binomial_payload():
    (criterion, family) = run_papercheck("binomials", SMALL)
    assert criterion.check_id == "binomials.criterion"
    assert criterion.payload["failed"] == 0
    assert criterion.payload["agreements"] == criterion.payload["checked"]
    assert family.parameters == {"family": [[5, 1]]}
