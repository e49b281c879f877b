import pytest

from puiseuxlab.errors import ExpressionSyntaxError, LabDomainError, PreconditionError, PuiseuxLabError


class TestPuiseuxLabError:
    def test_detail_fields(self):
        err = PuiseuxLabError("rational.zero-denominator", "Denominator must be nonzero.", data={"numerator": 3})
        assert err.code == "rational.zero-denominator"
        assert err.message == "Denominator must be nonzero."
        assert err.data == {"numerator": 3}

    def test_str_with_message(self):
        err = PuiseuxLabError("a.b", "Something broke.")
        assert str(err) == "Lab error [a.b]: Something broke."

    def test_str_without_message(self):
        assert str(PuiseuxLabError("a.b")) == "Lab error [a.b]"

    def test_data_from_json_string(self):
        err = PuiseuxLabError("a.b", data='{"p": 7}')
        assert err.data == {"p": 7}

    def test_data_from_plain_string(self):
        err = PuiseuxLabError("a.b", data="not json")
        assert err.data == {"raw": "not json"}

    def test_empty_data_omitted(self):
        err = PuiseuxLabError("a.b", "msg", data={})
        assert "data" not in err.detail
        assert err.data == {}


def test_domain_error_is_value_error():
    err = LabDomainError("arith.not-prime", "4 is not prime.")
    assert isinstance(err, ValueError)
    assert isinstance(err, PuiseuxLabError)
    assert str(err) == "Domain error [arith.not-prime]: 4 is not prime."


def test_precondition_error_kind():
    with pytest.raises(LabDomainError) as exc_info:
        raise PreconditionError("ff.not-primitive", "a is not primitive.")
    assert str(exc_info.value).startswith("Precondition error")


@pytest.mark.parametrize(
    ("position", "column", "suffix"),
    [
        (None, None, ""),
        (0, 1, " at column 1"),
        (4, 5, " at column 5"),
    ],
)
def test_syntax_error_column(position, column, suffix):
    err = ExpressionSyntaxError("expression.syntax", "Unexpected input", position=position, text="x + * 2")
    assert err.column == column
    assert str(err) == f"Syntax error [expression.syntax]: Unexpected input{suffix}"
