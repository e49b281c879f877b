"""
Text grammar shared by every expression the CLI and the data files accept.

    sum      := product (("+" | "-") product)*
    product  := unary (("*" | "/") unary)*
    unary    := "-" unary | power
    power    := atom ("^" exponent)?
    atom     := INT | x | y | s | t | "(" sum ")"
    exponent := INT | "-" INT | "(" ["-"] INT ["/" INT] ")"

Rational exponents are only meaningful on x; division is only by expressions free of x and y.
Every value printed by this package parses back to an equal value.
"""
from fractions import Fraction
from typing import Optional, Union

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedEOF, UnexpectedInput, VisitError

from puiseuxlab.arith import RatFunc, make_rational
from puiseuxlab.constants import ExpressionKind
from puiseuxlab.errors import ExpressionSyntaxError, LabDomainError, PuiseuxLabError
from puiseuxlab.finite_field import FpPoly
from puiseuxlab.semidomain import PolyExpr
from puiseuxlab.subring import RYPoly, SubringPoly
from puiseuxlab.utils import require_prime

GRAMMAR = r"""
    ?sum: product
        | sum "+" product   -> add
        | sum "-" product   -> sub

    ?product: unary
        | product "*" unary -> mul
        | product "/" unary -> div

    ?unary: power
        | "-" unary         -> neg

    ?power: atom
        | atom "^" exponent -> pow

    ?atom: INT              -> number
        | VARIABLE          -> variable
        | "(" sum ")"

    exponent: INT                       -> exp_int
        | "-" INT                       -> exp_neg
        | "(" INT ")"                   -> exp_int
        | "(" "-" INT ")"               -> exp_neg
        | "(" INT "/" INT ")"           -> exp_frac
        | "(" "-" INT "/" INT ")"       -> exp_neg_frac

    VARIABLE: "x" | "y" | "s" | "t"

    %import common.INT
    %import common.WS
    %ignore WS
"""

_PARSER = Lark(GRAMMAR, start="sum", parser="lalr")

ZERO = RatFunc.constant(0)

# Parsed values are maps {(x exponent, y exponent): coefficient in Q(s,t)}.
Terms = dict


def _clean(terms: Terms) -> Terms:
    return {key: c for key, c in terms.items() if not c.is_zero()}


def _scalar(terms: Terms) -> Optional[RatFunc]:
    """The value as an element of Q(s,t), or None when x or y occurs."""
    if not terms:
        return ZERO
    if set(terms) == {(Fraction(0), 0)}:
        return terms[(Fraction(0), 0)]
    return None


@v_args(inline=True)
class ExpressionBuilder(Transformer):
    def number(self, token):
        return {(Fraction(0), 0): RatFunc.constant(int(token))}

    def variable(self, token):
        name = str(token)
        if name == "x":
            return {(Fraction(1), 0): RatFunc.constant(1)}
        if name == "y":
            return {(Fraction(0), 1): RatFunc.constant(1)}
        return {(Fraction(0), 0): RatFunc.variable(name)}

    def exp_int(self, token):
        return Fraction(int(token))

    def exp_neg(self, token):
        return Fraction(-int(token))

    def exp_frac(self, numerator, denominator):
        return make_rational(int(numerator), int(denominator))

    def exp_neg_frac(self, numerator, denominator):
        return -make_rational(int(numerator), int(denominator))

    def add(self, left, right):
        total = dict(left)
        for key, c in right.items():
            total[key] = total.get(key, ZERO) + c
        return _clean(total)

    def neg(self, value):
        return {key: -c for key, c in value.items()}

    def sub(self, left, right):
        return self.add(left, self.neg(right))

    def mul(self, left, right):
        product: dict = {}
        for (x1, y1), c1 in left.items():
            for (x2, y2), c2 in right.items():
                key = (x1 + x2, y1 + y2)
                product[key] = product.get(key, ZERO) + c1 * c2
        return _clean(product)

    def div(self, left, right):
        divisor = _scalar(right)
        if divisor is None:
            raise LabDomainError(
                "expression.non-scalar-division", "Division is only defined by expressions in s and t."
            )
        if divisor.is_zero():
            raise LabDomainError("expression.zero-division", "Division by zero.")
        return {key: c / divisor for key, c in left.items()}

    def pow(self, base, exponent):
        scalar = _scalar(base)
        if scalar is not None:
            if exponent.denominator != 1:
                raise LabDomainError("expression.rational-power", "Only x may carry a rational exponent.")
            if scalar.is_zero() and exponent < 0:
                raise LabDomainError("expression.zero-division", "Zero has no negative powers.")
            return _clean({(Fraction(0), 0): scalar**exponent.numerator})
        if exponent < 0:
            raise LabDomainError("expression.negative-exponent", "x and y may not carry negative exponents.")
        if len(base) == 1:
            ((x_exp, y_exp), c) = next(iter(base.items()))
            if c == 1:
                if y_exp and exponent.denominator != 1:
                    raise LabDomainError("expression.rational-power", "Only x may carry a rational exponent.")
                return {(x_exp * exponent, int(y_exp * exponent)): c}
        if exponent.denominator != 1:
            raise LabDomainError(
                "expression.bad-power",
                f"Cannot raise a polynomial to the power {exponent}.",
                data={"exponent": str(exponent)},
            )
        result = {(Fraction(0), 0): RatFunc.constant(1)}
        for _ in range(exponent.numerator):
            result = self.mul(result, base)
        return result


def parse_terms(text: str) -> Terms:
    """Parse text into {(x exponent, y exponent): coefficient}."""
    try:
        tree = _PARSER.parse(text)
    except UnexpectedEOF:
        raise ExpressionSyntaxError(
            "expression.syntax", "Unexpected end of input", position=len(text), text=text
        ) from None
    except UnexpectedInput as exc:
        position = getattr(exc, "pos_in_stream", None)
        if position is None or position < 0:
            position = len(text)
        raise ExpressionSyntaxError("expression.syntax", "Unexpected input", position=position, text=text) from None
    try:
        return ExpressionBuilder().transform(tree)
    except VisitError as exc:
        if isinstance(exc.orig_exc, PuiseuxLabError):
            raise exc.orig_exc from None
        raise


def _constant(c: RatFunc, text: str):
    if not c.is_constant():
        raise LabDomainError("expression.coefficient-domain", f"Coefficient {c} is not rational in {text!r}.")
    return c.constant_value()


def _no_y(terms: Terms, text: str):
    if any(y_exp for _, y_exp in terms):
        raise LabDomainError("expression.unexpected-y", f"y does not belong in {text!r}.")


def _integer_x(terms: Terms, text: str):
    if any(x_exp.denominator != 1 for x_exp, _ in terms):
        raise LabDomainError("expression.rational-exponent", f"x exponents must be integers in {text!r}.")


def parse_expression(
    text: str, kind: Union[ExpressionKind, str] = ExpressionKind.POLYEXPR, modulus: Optional[int] = None
):
    """
    Parse text and convert it into the requested kind of value.

    Args:
        text: the expression, e.g. "x^2 + x + 1" or "s*x^2*y + t*x^2"
        kind: rational, ratfunc, polyexpr, fppoly, subring or ry
        modulus: the prime p for F_p coefficients (required for fppoly, optional for polyexpr)

    Returns:
        A Fraction, RatFunc, PolyExpr, FpPoly, SubringPoly or RYPoly.
    """
    kind = ExpressionKind(kind)
    if modulus is not None:
        require_prime(modulus, "modulus")
    terms = parse_terms(text)

    if kind in (ExpressionKind.RATIONAL, ExpressionKind.RATFUNC):
        scalar = _scalar(terms)
        if scalar is None:
            raise LabDomainError("expression.not-scalar", f"{text!r} involves x or y.")
        return _constant(scalar, text) if kind is ExpressionKind.RATIONAL else scalar

    if kind is not ExpressionKind.RY:
        _no_y(terms, text)
    if kind in (ExpressionKind.POLYEXPR, ExpressionKind.FPPOLY):
        expr = PolyExpr(tuple((x_exp, _constant(c, text)) for (x_exp, _), c in terms.items()), modulus)
        if kind is ExpressionKind.POLYEXPR:
            return expr
        if modulus is None:
            raise LabDomainError("expression.missing-modulus", "F_p[x] needs a modulus.")
        return expr.to_fppoly()

    _integer_x(terms, text)
    if any(x_exp < 0 or y_exp < 0 for x_exp, y_exp in terms):
        raise LabDomainError("expression.negative-exponent", f"Exponents must be nonnegative in {text!r}.")
    if kind is ExpressionKind.SUBRING:
        return SubringPoly.from_dict({int(x_exp): c for (x_exp, _), c in terms.items()})
    return RYPoly.from_dict({(int(x_exp), y_exp): c for (x_exp, y_exp), c in terms.items()})


def format_expression(value) -> str:
    """Print any parseable value; `parse_expression(format_expression(v), kind)` equals v."""
    return str(value)


def parse_polyexpr(text: str, modulus: Optional[int] = None) -> PolyExpr:
    return parse_expression(text, ExpressionKind.POLYEXPR, modulus)


def parse_fppoly(text: str, modulus: int) -> FpPoly:
    return parse_expression(text, ExpressionKind.FPPOLY, modulus)


def parse_ry(text: str) -> RYPoly:
    return parse_expression(text, ExpressionKind.RY)
