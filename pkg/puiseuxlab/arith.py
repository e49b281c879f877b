"""
Exact arithmetic shared by every other module: reduced rationals, p-adic valuations,
localizations Z[1/p : p in P], and the rational function fields Q(s) ⊆ Q(s,t).

Rationals are `fractions.Fraction` values. Multivariate polynomials in s and t are elements
of a sympy sparse ring with graded lexicographic term order; `RatFunc` pairs two of them.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from sympy import QQ
from sympy.ntheory import multiplicity
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, ring

from puiseuxlab.errors import LabDomainError
from puiseuxlab.utils import prime_factors, require_prime

MPOLY_RING, S, T = ring("s,t", QQ, order=grlex)
INDETERMINATES = ("s", "t")

Scalar = Union[int, Fraction]


def make_rational(n: int, d: int = 1) -> Fraction:
    """Return the reduced, positive-denominator representative of n/d."""
    if not isinstance(n, int) or not isinstance(d, int):
        raise TypeError("Args `n` and `d` must be integers.")
    if d == 0:
        raise LabDomainError("rational.zero-denominator", "Denominator must be nonzero.", data={"numerator": n})
    return Fraction(n, d)


def padic_valuation(q: Scalar, p: int) -> int:
    """v_p(q) = v_p(numerator) - v_p(denominator)."""
    require_prime(p)
    q = Fraction(q)
    if q == 0:
        raise LabDomainError("valuation.zero", "The p-adic valuation of 0 is undefined.")
    return int(multiplicity(p, abs(q.numerator))) - int(multiplicity(p, q.denominator))


def in_localization(q: Scalar, primes: Iterable[int]) -> bool:
    """True iff every prime factor of d(q) lies in `primes`, i.e. q ∈ Z[1/p : p ∈ primes]."""
    allowed = set(primes)
    return all(f in allowed for f in prime_factors(Fraction(q).denominator))


def to_fraction(c) -> Fraction:
    """Convert a ground-domain (QQ) coefficient to a Fraction."""
    return Fraction(int(c.numerator), int(c.denominator))


def to_qq(c: Scalar):
    c = Fraction(c)
    return QQ(c.numerator, c.denominator)


def format_mpoly(poly: PolyElement) -> str:
    """Print an element of Q[s,t] in the text grammar, terms in descending grlex order."""
    if not poly:
        return "0"
    pieces = []
    for monom, coeff in poly.terms():
        c = to_fraction(coeff)
        factors = []
        for name, exp in zip(INDETERMINATES, monom):
            if exp == 1:
                factors.append(name)
            elif exp > 1:
                factors.append(f"{name}^{exp}")
        if not factors:
            term = str(c)
        elif c == 1:
            term = "*".join(factors)
        elif c == -1:
            term = "-" + "*".join(factors)
        else:
            term = f"{c}*" + "*".join(factors)
        pieces.append(term)
    text = pieces[0]
    for term in pieces[1:]:
        text += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return text


@dataclass(frozen=True, eq=False)
class RatFunc:
    """
    An element of Q(s,t) as numerator/denominator in Q[s,t].

    Construction cancels common factors with the ring's gcd and normalizes the sign so the
    denominator's leading coefficient is positive and both parts have coprime integer contents.
    Equality is decided by cross-multiplication.
    """

    numerator: PolyElement
    denominator: PolyElement

    def __post_init__(self):
        if not self.denominator:
            raise LabDomainError("ratfunc.zero-denominator", "RatFunc denominator must be nonzero.")
        num, den = self.numerator.cancel(self.denominator)
        if not num:
            num, den = MPOLY_RING.zero, MPOLY_RING.one
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    @classmethod
    def constant(cls, c: Scalar) -> "RatFunc":
        return cls(MPOLY_RING(to_qq(c)), MPOLY_RING.one)

    @classmethod
    def polynomial(cls, poly: PolyElement) -> "RatFunc":
        return cls(poly, MPOLY_RING.one)

    @classmethod
    def variable(cls, name: str) -> "RatFunc":
        if name not in INDETERMINATES:
            raise LabDomainError("ratfunc.unknown-variable", f"Unknown indeterminate {name!r}.")
        return cls.polynomial(S if name == "s" else T)

    @staticmethod
    def coerce(value: Union["RatFunc", Scalar]) -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, (int, Fraction)):
            return RatFunc.constant(value)
        raise TypeError(f"Cannot use {type(value).__name__} as an element of Q(s,t).")

    def is_zero(self) -> bool:
        return not self.numerator

    def is_constant(self) -> bool:
        return self.numerator.is_ground and self.denominator.is_ground

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise LabDomainError("ratfunc.not-constant", f"{self} is not a rational constant.")
        return to_fraction(self.numerator.LC if self.numerator else QQ(0)) / to_fraction(self.denominator.LC)

    def is_integer(self) -> bool:
        return self.is_constant() and self.constant_value().denominator == 1

    def variables(self) -> frozenset:
        used = set()
        for poly in (self.numerator, self.denominator):
            for monom in poly.monoms():
                used.update(name for name, exp in zip(INDETERMINATES, monom) if exp)
        return frozenset(used)

    def as_polynomial(self) -> PolyElement:
        """The numerator divided by a constant denominator; fails for proper fractions."""
        if not self.denominator.is_ground:
            raise LabDomainError("ratfunc.not-polynomial", f"{self} is not a polynomial in s, t.")
        return self.numerator.quo_ground(self.denominator.LC)

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise LabDomainError("ratfunc.zero-inverse", "Cannot invert the zero rational function.")
        return RatFunc(self.denominator, self.numerator)

    def __add__(self, other):
        other = RatFunc.coerce(other)
        return RatFunc(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.numerator, self.denominator)

    def __sub__(self, other):
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other):
        return RatFunc.coerce(other) - self

    def __mul__(self, other):
        other = RatFunc.coerce(other)
        return RatFunc(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * RatFunc.coerce(other).inverse()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return RatFunc(self.numerator**exponent, self.denominator**exponent)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.constant(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        if self.denominator.is_ground:
            return format_mpoly(self.as_polynomial())
        return f"({format_mpoly(self.numerator)})/({format_mpoly(self.denominator)})"

    def __repr__(self):
        return f"RatFunc({self})"


def ratfunc_arith(a: RatFunc, b: Union[RatFunc, None], op: str) -> Union[RatFunc, bool]:
    """Field operations in Q(s,t): op is one of add, mul, inv (b ignored) or eq."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "eq":
        return a == b
    raise LabDomainError("ratfunc.unknown-op", f"Unknown operation {op!r}; expected add, mul, inv or eq.")
