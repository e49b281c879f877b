from puiseuxlab.constants import (
    DEFAULT_ORACLE_CONFIG,
    DEFAULT_PROBE_BUDGET,
    DEFAULT_SEARCH_BUDGET,
    AtomVerdict,
    CandidateVerdict,
    ExitCode,
    ExpressionKind,
    LinkStatus,
    Suite,
    TopField,
    Verdict,
)


def test_verdict_pass_label():
    assert Verdict.PASS.label == "pass"


def test_verdict_fail_label():
    assert Verdict.FAIL.label == "fail"


def test_verdict_unknown_label():
    assert Verdict.UNKNOWN.label == "unknown-at-budget"


def test_verdict_unknown_description():
    assert Verdict.UNKNOWN.description == "search budget exhausted before a decision"


def test_atom_verdict_atom_label():
    assert AtomVerdict.ATOM.label == "atom-at-depth"


def test_candidate_verdict_unknown_label():
    assert CandidateVerdict.UNKNOWN.label == "unknown-at-budget"


def test_link_status_not_ascending_label():
    assert LinkStatus.NOT_ASCENDING.label == "not-ascending"


def test_top_field_q_has_no_indeterminates():
    assert TopField.Q.indeterminates == frozenset()


def test_top_field_qst_indeterminates():
    assert TopField.QST.indeterminates == frozenset({"s", "t"})
    assert TopField.QST.label == "Q(s,t)"


def test_suite_from_label():
    assert Suite("prop-mqr") is Suite.PROP_MQR


def test_expression_kind_from_label():
    assert ExpressionKind("ry") is ExpressionKind.RY


def test_exit_codes():
    assert [code.value for code in ExitCode] == [0, 1, 2]


def test_default_search_budget():
    assert DEFAULT_SEARCH_BUDGET.as_dict() == {"depth": 6, "refinements": 1, "max_groupings": 4096}


def test_default_oracle_config():
    assert DEFAULT_ORACLE_CONFIG.as_dict() == {"trial_division_degree": 12, "trial_division_limit": 5000}


def test_default_probe_budget():
    assert DEFAULT_PROBE_BUDGET.as_dict() == {"multiplier_bound": 4, "max_groupings": 256}
