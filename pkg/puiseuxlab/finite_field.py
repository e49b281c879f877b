"""
Prime fields F_p and the polynomial ring F_p[x].

Dense arithmetic is delegated to `sympy.polys.galoistools`, which works on coefficient lists
ordered from the highest degree down; `FpPoly` stores coefficients from degree 0 up and
converts at the boundary. The irreducibility criteria for binomials and trinomials live here
next to an oracle that decides irreducibility without using them.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Iterable, Union

from sympy.ntheory import n_order
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_add,
    gf_compose,
    gf_div,
    gf_eval,
    gf_factor,
    gf_gcd,
    gf_irred_p_rabin,
    gf_monic,
    gf_mul,
    gf_pow,
    gf_pow_mod,
    gf_rem,
    gf_sub,
)

from puiseuxlab.constants import DEFAULT_ORACLE_CONFIG, OracleConfig
from puiseuxlab.errors import LabDomainError, PreconditionError
from puiseuxlab.utils import prime_factors, require_prime


@dataclass(frozen=True)
class FpElem:
    """An element of the prime field F_p, value kept in [0, p)."""

    value: int
    p: int

    def __post_init__(self):
        if self.p < 2:
            raise LabDomainError("field.bad-modulus", f"Modulus {self.p} is not prime.")
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, FpElem):
            if other.p != self.p:
                raise LabDomainError("field.modulus-mismatch", f"Cannot combine F_{self.p} and F_{other.p}.")
            return other.value
        if isinstance(other, int):
            return other
        raise TypeError(f"Cannot use {type(other).__name__} as an element of F_{self.p}.")

    def is_zero(self) -> bool:
        return self.value == 0

    def inverse(self) -> "FpElem":
        if self.value == 0:
            raise LabDomainError("field.zero-inverse", "0 has no multiplicative inverse.")
        return FpElem(pow(self.value, -1, self.p), self.p)

    def __add__(self, other):
        return FpElem(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return FpElem(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return FpElem(self._coerce(other) - self.value, self.p)

    def __neg__(self):
        return FpElem(-self.value, self.p)

    def __mul__(self, other):
        return FpElem(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * FpElem(self._coerce(other), self.p).inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return FpElem(pow(self.value, exponent, self.p), self.p)

    def __int__(self):
        return self.value

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class FpPoly:
    """
    A polynomial over F_p with coefficients listed from degree 0 upward.

    The last coefficient is nonzero; the empty tuple is the zero polynomial.
    """

    coeffs: tuple
    p: int

    def __post_init__(self):
        reduced = [int(c) % self.p for c in self.coeffs]
        while reduced and reduced[-1] == 0:
            reduced.pop()
        object.__setattr__(self, "coeffs", tuple(reduced))

    @classmethod
    def from_dense(cls, dense: Iterable, p: int) -> "FpPoly":
        """Build from a galoistools coefficient list (highest degree first)."""
        return cls(tuple(int(c) for c in reversed(list(dense))), p)

    @classmethod
    def from_terms(cls, terms: dict, p: int) -> "FpPoly":
        """Build from a {degree: coefficient} map."""
        if not terms:
            return cls((), p)
        coeffs = [0] * (max(terms) + 1)
        for k, c in terms.items():
            coeffs[k] = (coeffs[k] + int(c)) % p
        return cls(tuple(coeffs), p)

    @classmethod
    def constant(cls, c: int, p: int) -> "FpPoly":
        return cls((c,), p)

    @classmethod
    def monomial(cls, c: int, k: int, p: int) -> "FpPoly":
        return cls(tuple([0] * k + [c]), p)

    @classmethod
    def x(cls, p: int) -> "FpPoly":
        return cls.monomial(1, 1, p)

    @property
    def dense(self) -> list:
        return list(reversed(self.coeffs))

    @property
    def degree(self) -> int:
        """Degree, or -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> FpElem:
        if not self.coeffs:
            raise LabDomainError("poly.zero", "The zero polynomial has no leading coefficient.")
        return FpElem(self.coeffs[-1], self.p)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coefficient(self, k: int) -> FpElem:
        return FpElem(self.coeffs[k] if 0 <= k < len(self.coeffs) else 0, self.p)

    def terms(self) -> dict:
        return {k: c for k, c in enumerate(self.coeffs) if c}

    def _other(self, other) -> "FpPoly":
        if isinstance(other, FpPoly):
            if other.p != self.p:
                raise LabDomainError("field.modulus-mismatch", f"Cannot combine F_{self.p}[x] and F_{other.p}[x].")
            return other
        if isinstance(other, (int, FpElem)):
            return FpPoly.constant(int(other), self.p)
        raise TypeError(f"Cannot use {type(other).__name__} as an element of F_{self.p}[x].")

    def __add__(self, other):
        return FpPoly.from_dense(gf_add(self.dense, self._other(other).dense, self.p, ZZ), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return FpPoly.from_dense(gf_sub(self.dense, self._other(other).dense, self.p, ZZ), self.p)

    def __neg__(self):
        return FpPoly(tuple(-c for c in self.coeffs), self.p)

    def __mul__(self, other):
        return FpPoly.from_dense(gf_mul(self.dense, self._other(other).dense, self.p, ZZ), self.p)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise LabDomainError("poly.negative-power", "Polynomials have no negative powers.")
        return FpPoly.from_dense(gf_pow(self.dense, exponent, self.p, ZZ), self.p)

    def __divmod__(self, other):
        other = self._other(other)
        if other.is_zero():
            raise LabDomainError("poly.zero-division", "Division by the zero polynomial.")
        q, r = gf_div(self.dense, other.dense, self.p, ZZ)
        return FpPoly.from_dense(q, self.p), FpPoly.from_dense(r, self.p)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, a: Union[int, FpElem]) -> FpElem:
        return FpElem(int(gf_eval(self.dense, int(a), self.p, ZZ)), self.p)

    def gcd(self, other: "FpPoly") -> "FpPoly":
        return FpPoly.from_dense(gf_gcd(self.dense, self._other(other).dense, self.p, ZZ), self.p)

    def monic(self) -> tuple:
        """Return (leading coefficient, monic associate)."""
        lc, g = gf_monic(self.dense, self.p, ZZ)
        return FpElem(int(lc), self.p), FpPoly.from_dense(g, self.p)

    def pow_mod(self, exponent: int, modulus: "FpPoly") -> "FpPoly":
        return FpPoly.from_dense(gf_pow_mod(self.dense, exponent, modulus.dense, self.p, ZZ), self.p)

    def compose(self, other: "FpPoly") -> "FpPoly":
        return FpPoly.from_dense(gf_compose(self.dense, self._other(other).dense, self.p, ZZ), self.p)

    def compose_power(self, k: int) -> "FpPoly":
        """Substitute x -> x^k."""
        if k < 1:
            raise LabDomainError("poly.bad-substitution", f"Cannot substitute x -> x^{k}.")
        return FpPoly.from_terms({i * k: c for i, c in self.terms().items()}, self.p)

    def __str__(self):
        if not self.coeffs:
            return "0"
        pieces = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                pieces.append(str(c))
                continue
            power = "x" if k == 1 else f"x^{k}"
            pieces.append(power if c == 1 else f"{c}*{power}")
        return " + ".join(pieces)


@dataclass(frozen=True)
class Factorization:
    """f = unit * prod(factor^multiplicity) with monic irreducible factors."""

    unit: FpElem
    factors: tuple

    def expand(self) -> FpPoly:
        product = FpPoly.constant(self.unit.value, self.unit.p)
        for factor, multiplicity in self.factors:
            product = product * factor**multiplicity
        return product

    def atoms(self) -> list:
        """Irreducible factors listed with repetition."""
        return [factor for factor, multiplicity in self.factors for _ in range(multiplicity)]

    def as_dict(self) -> dict:
        return {"unit": self.unit.value, "factors": [[str(f), m] for f, m in self.factors]}


def multiplicative_order(a: FpElem) -> int:
    """Least e >= 1 with a^e = 1."""
    require_prime(a.p)
    if a.is_zero():
        raise LabDomainError("field.zero-order", "0 has no multiplicative order.")
    return int(n_order(a.value, a.p))


def primitive_roots(p: int) -> list:
    """All generators of F_p^x, ascending."""
    require_prime(p)
    return [FpElem(a, p) for a in range(1, p) if multiplicative_order(FpElem(a, p)) == p - 1]


def binomial(t: int, a: FpElem) -> FpPoly:
    """x^t - a."""
    return FpPoly.monomial(1, t, a.p) - a.value


def binomial_irreducible(t: int, a: FpElem) -> bool:
    """
    Decide irreducibility of x^t - a over the prime field from the order e of a.

    The binomial is irreducible iff gcd(t, (p-1)/e) = 1, every prime factor of t divides e,
    and 4 | t implies 4 | p - 1.
    """
    if t < 2:
        raise LabDomainError("binomial.small-exponent", f"Exponent t = {t} must be at least 2.")
    require_prime(a.p)
    p = a.p
    e = multiplicative_order(a)
    if math.gcd(t, (p - 1) // e) != 1:
        return False
    if any(e % ell for ell in prime_factors(t)):
        return False
    if t % 4 == 0 and (p - 1) % 4 != 0:
        return False
    return True


def trinomial_parameter(p: int) -> FpElem:
    """
    The parameter a for which x^{2^k} - 2a x^{2^{k-1}} - 1 is irreducible over F_p for every k.

    Write p + 1 = 2^γ s with s odd. Then a_1 = 0, a_j = ((a_{j-1} + 1)/2)^{(p+1)/4} for
    2 <= j <= γ - 1, and a = a_γ = ((a_{γ-1} - 1)/2)^{(p+1)/4}.
    """
    require_prime(p)
    if p % 4 != 3:
        raise LabDomainError("trinomial.bad-prime", f"p = {p} is not congruent to 3 mod 4.", data={"p": p})
    gamma = 0
    m = p + 1
    while m % 2 == 0:
        m //= 2
        gamma += 1
    half = FpElem(2, p).inverse()
    exponent = (p + 1) // 4
    a = FpElem(0, p)
    for _ in range(2, gamma):
        a = ((a + 1) * half) ** exponent
    return ((a - 1) * half) ** exponent


def trinomial(p: int, k: int) -> FpPoly:
    """x^{2^k} - 2a x^{2^{k-1}} - 1 with a = trinomial_parameter(p)."""
    if k < 1:
        raise LabDomainError("trinomial.bad-k", f"k = {k} must be positive.")
    a = trinomial_parameter(p)
    return FpPoly.from_terms({2**k: 1, 2 ** (k - 1): (-2 * a.value) % p, 0: p - 1}, p)


def is_irreducible_oracle(f: FpPoly, config: OracleConfig = DEFAULT_ORACLE_CONFIG) -> bool:
    """
    Decide irreducibility of f without any structural criterion.

    Small inputs are settled by trial division by every monic polynomial of degree at most
    deg f / 2; the rest by Rabin's test: x^{p^n} = x mod f and gcd(x^{p^{n/l}} - x, f) = 1 for
    each prime l | n.
    """
    if f.degree < 1:
        raise LabDomainError("oracle.constant", "Irreducibility is undefined for constant polynomials.")
    if f.degree == 1:
        return True
    if uses_trial_division(f, config):
        return _irreducible_by_trial_division(f)
    return _irreducible_by_rabin(f)


def uses_trial_division(f: FpPoly, config: OracleConfig = DEFAULT_ORACLE_CONFIG) -> bool:
    if f.degree > config.trial_division_degree:
        return False
    candidates = sum(f.p**k for k in range(1, f.degree // 2 + 1))
    return candidates <= config.trial_division_limit


def _irreducible_by_trial_division(f: FpPoly) -> bool:
    dense = f.dense
    for k in range(1, f.degree // 2 + 1):
        for tail in itertools.product(range(f.p), repeat=k):
            if not gf_rem(dense, [1, *tail], f.p, ZZ):
                return False
    return True


def _irreducible_by_rabin(f: FpPoly) -> bool:
    return bool(gf_irred_p_rabin(f.dense, f.p, ZZ))


def factorize(f: FpPoly) -> Factorization:
    """Split f into a unit times monic irreducible factors with multiplicities."""
    if f.is_zero():
        raise LabDomainError("factor.zero", "Cannot factor the zero polynomial.")
    lc, factors = gf_factor(f.dense, f.p, ZZ)
    pairs = sorted(
        ((FpPoly.from_dense(g, f.p), int(m)) for g, m in factors),
        key=lambda pair: (pair[0].degree, pair[0].coeffs),
    )
    logging.debug("factorize(%s) over F_%d: %d distinct factors", f, f.p, len(pairs))
    return Factorization(FpElem(int(lc), f.p), tuple(pairs))


def frobenius_power_check(g: FpPoly, n: int) -> bool:
    """Check g(x)^{p^n} = g(x^{p^n}); always true over F_p."""
    if n < 1:
        raise LabDomainError("frobenius.bad-n", f"n = {n} must be positive.")
    q = g.p**n
    return g**q == g.compose_power(q)


def binomial_family_check(p: int, n: int, a: FpElem, config: OracleConfig = DEFAULT_ORACLE_CONFIG) -> dict:
    """Run criterion and oracle on x^{(p-1)^n} - a for a primitive root a, p = 1 mod 4."""
    require_prime(p)
    if p % 4 != 1:
        raise PreconditionError("binomial.bad-prime", f"p = {p} is not congruent to 1 mod 4.", data={"p": p})
    if multiplicative_order(a) != p - 1:
        raise PreconditionError("binomial.not-primitive", f"{a} is not a primitive root modulo {p}.")
    t = (p - 1) ** n
    return {
        "p": p,
        "n": n,
        "a": a.value,
        "t": t,
        "criterion": binomial_irreducible(t, a),
        "oracle": is_irreducible_oracle(binomial(t, a), config),
    }
