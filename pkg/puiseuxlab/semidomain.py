"""
Monoid semidomains S[M] for Puiseux monoids M, with S a prime field F_p or the integers.

An element is a `PolyExpr`: finitely many terms c x^q with q a nonnegative rational. Every
search for factors over F_p[M] passes through standard polynomials: substitute x -> x^D to clear
denominators, factor in F_p[x], and map candidate factors back with x -> x^(1/D).
"""
import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from sympy import Poly, Symbol, divisors
from sympy.polys.domains import ZZ

from puiseuxlab.arith import Scalar
from puiseuxlab.constants import DEFAULT_SEARCH_BUDGET, AtomVerdict, MonoidKind, SearchBudget
from puiseuxlab.errors import LabDomainError, PreconditionError
from puiseuxlab.finite_field import (
    FpElem,
    FpPoly,
    factorize,
    is_irreducible_oracle,
    primitive_roots,
    trinomial_parameter,
)
from puiseuxlab.monoid import (
    MembershipCertificate,
    PuiseuxMonoidSpec,
    element_atom_check,
    localization_primes,
    membership,
    reachable,
)
from puiseuxlab.utils import format_power, format_term, join_terms, lcm_all, require_prime

X = Symbol("x")


@dataclass(frozen=True)
class PolyExpr:
    """
    c_1 x^{q_1} + ... + c_n x^{q_n} with distinct exponents q_i >= 0.

    `modulus` is the prime p for coefficients in F_p (stored as ints in [1, p)) or None for
    rational coefficients (stored as Fractions). Terms are kept sorted by exponent.
    """

    terms: tuple = ()
    modulus: Optional[int] = None

    def __post_init__(self):
        collected: dict = {}
        for exponent, coefficient in self.terms:
            exponent = Fraction(exponent)
            if exponent < 0:
                raise LabDomainError("polyexpr.negative-exponent", f"Exponent {exponent} is negative.")
            collected[exponent] = collected.get(exponent, 0) + self._normalize(coefficient)
        cleaned = []
        for exponent in sorted(collected):
            coefficient = self._normalize(collected[exponent])
            if coefficient:
                cleaned.append((exponent, coefficient))
        object.__setattr__(self, "terms", tuple(cleaned))

    def _normalize(self, coefficient):
        if isinstance(coefficient, FpElem):
            coefficient = coefficient.value
        if self.modulus is None:
            return Fraction(coefficient)
        coefficient = Fraction(coefficient)
        if coefficient.denominator % self.modulus == 0:
            raise LabDomainError(
                "polyexpr.coefficient-domain", f"{coefficient} is not an element of F_{self.modulus}."
            )
        if coefficient.denominator != 1:
            return (coefficient.numerator * pow(coefficient.denominator, -1, self.modulus)) % self.modulus
        return coefficient.numerator % self.modulus

    @classmethod
    def from_dict(cls, mapping: dict, modulus: Optional[int] = None) -> "PolyExpr":
        return cls(tuple(mapping.items()), modulus)

    @classmethod
    def constant(cls, c, modulus: Optional[int] = None) -> "PolyExpr":
        return cls(((0, c),), modulus)

    @classmethod
    def monomial(cls, c, exponent: Scalar, modulus: Optional[int] = None) -> "PolyExpr":
        return cls(((exponent, c),), modulus)

    @classmethod
    def from_fppoly(cls, f: FpPoly) -> "PolyExpr":
        return cls(tuple(f.terms().items()), f.p)

    @property
    def domain(self) -> str:
        return "Q" if self.modulus is None else f"F_{self.modulus}"

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return self.is_zero() or (len(self.terms) == 1 and self.terms[0][0] == 0)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def support(self) -> tuple:
        return tuple(exponent for exponent, _ in self.terms)

    def as_dict(self) -> dict:
        return dict(self.terms)

    def coefficient(self, exponent: Scalar):
        return self.as_dict().get(Fraction(exponent), 0)

    def _nonzero(self):
        if not self.terms:
            raise LabDomainError("polyexpr.zero", "The zero expression has no order, degree or coefficients.")

    @property
    def order(self) -> Fraction:
        self._nonzero()
        return self.terms[0][0]

    @property
    def degree(self) -> Fraction:
        self._nonzero()
        return self.terms[-1][0]

    @property
    def order_coefficient(self):
        self._nonzero()
        return self.terms[0][1]

    @property
    def leading_coefficient(self):
        self._nonzero()
        return self.terms[-1][1]

    def exponent_denominator(self) -> int:
        return lcm_all(exponent.denominator for exponent in self.support())

    def _check(self, other: "PolyExpr") -> "PolyExpr":
        if isinstance(other, (int, Fraction, FpElem)):
            return PolyExpr.constant(other, self.modulus)
        if not isinstance(other, PolyExpr):
            raise TypeError(f"Cannot combine PolyExpr with {type(other).__name__}.")
        if other.modulus != self.modulus:
            raise LabDomainError(
                "polyexpr.domain-mismatch", f"Cannot combine coefficients in {self.domain} and {other.domain}."
            )
        return other

    def __add__(self, other):
        other = self._check(other)
        return PolyExpr(self.terms + other.terms, self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return PolyExpr(tuple((e, -c) for e, c in self.terms), self.modulus)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        products: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                products[e1 + e2] = products.get(e1 + e2, 0) + c1 * c2
        return PolyExpr(tuple(products.items()), self.modulus)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise LabDomainError("polyexpr.negative-power", "Only nonnegative powers are defined.")
        result = PolyExpr.constant(1, self.modulus)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def _divide_coefficient(self, a, b):
        if self.modulus is None:
            return Fraction(a) / Fraction(b)
        return a * pow(int(b), -1, self.modulus) % self.modulus

    def divide(self, other: "PolyExpr", max_steps: int = 10_000) -> tuple:
        """
        Long division by leading terms; returns (quotient, remainder).

        The remainder is zero exactly when other divides self in the monoid algebra over the
        nonnegative rationals.
        """
        other = self._check(other)
        if other.is_zero():
            raise LabDomainError("polyexpr.zero-division", "Division by the zero expression.")
        quotient: dict = {}
        remainder = self
        steps = 0
        while not remainder.is_zero() and remainder.degree >= other.degree:
            steps += 1
            if steps > max_steps:
                raise LabDomainError(
                    "polyexpr.division-budget", f"Long division did not finish within {max_steps} steps."
                )
            shift = remainder.degree - other.degree
            c = self._divide_coefficient(remainder.leading_coefficient, other.leading_coefficient)
            quotient[shift] = c
            remainder = remainder - PolyExpr.monomial(c, shift, self.modulus) * other
        return PolyExpr.from_dict(quotient, self.modulus), remainder

    def substitute_power(self, c: Scalar) -> "PolyExpr":
        c = Fraction(c)
        if c <= 0:
            raise LabDomainError("polyexpr.bad-substitution", f"Cannot substitute x -> x^{c}.")
        return PolyExpr(tuple((e * c, coefficient) for e, coefficient in self.terms), self.modulus)

    def to_fppoly(self) -> FpPoly:
        if self.modulus is None:
            raise LabDomainError("polyexpr.not-finite-field", "Only F_p coefficients map into F_p[x].")
        if self.exponent_denominator() != 1:
            raise LabDomainError("polyexpr.not-standard", f"{self} has non-integer exponents.")
        return FpPoly.from_terms({int(e): c for e, c in self.terms}, self.modulus)

    def to_integer_poly(self) -> Poly:
        if self.modulus is not None or self.exponent_denominator() != 1:
            raise LabDomainError("polyexpr.not-integer-poly", f"{self} is not a polynomial in Z[x].")
        if any(c.denominator != 1 for _, c in self.terms):
            raise LabDomainError("polyexpr.not-integer-poly", f"{self} has non-integer coefficients.")
        return Poly.from_dict({(int(e),): int(c) for e, c in self.terms} or {(0,): 0}, X, domain=ZZ)

    @classmethod
    def from_integer_poly(cls, poly: Poly) -> "PolyExpr":
        return cls(tuple((monom[0], int(c)) for monom, c in poly.terms()), None)

    def __str__(self):
        return join_terms([format_term(c, format_power("x", e)) for e, c in reversed(self.terms)])

    def __repr__(self):
        return f"PolyExpr({self}, {self.domain})"


@dataclass(frozen=True)
class Structure:
    support: tuple
    order: Fraction
    degree: Fraction
    order_coefficient: Union[int, Fraction]
    leading_coefficient: Union[int, Fraction]

    def as_dict(self) -> dict:
        return {
            "support": [str(e) for e in self.support],
            "order": str(self.order),
            "degree": str(self.degree),
            "order_coefficient": str(self.order_coefficient),
            "leading_coefficient": str(self.leading_coefficient),
        }


def structure(f: PolyExpr) -> Structure:
    """Support, order, degree, order coefficient and leading coefficient of f."""
    if f.is_zero():
        raise LabDomainError("polyexpr.zero", "The zero expression has no order, degree or coefficients.")
    return Structure(f.support(), f.order, f.degree, f.order_coefficient, f.leading_coefficient)


def arith(f: PolyExpr, g: PolyExpr, op: str) -> PolyExpr:
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    raise LabDomainError("polyexpr.unknown-op", f"Unknown operation {op!r}; expected add or mul.")


def is_unit(f: PolyExpr) -> bool:
    """Units of S[M] for a reduced monoid M and a field S are the nonzero constants."""
    return not f.is_zero() and f.is_constant()


def substitute_power(f: PolyExpr, c: Scalar) -> PolyExpr:
    return f.substitute_power(c)


def clear_denominators(f: PolyExpr) -> tuple:
    """(f(x^D) as a standard polynomial, D) with D the lcm of the exponent denominators."""
    if f.modulus is None:
        raise LabDomainError("polyexpr.not-finite-field", "Clearing denominators needs F_p coefficients.")
    denominator = f.exponent_denominator()
    return f.substitute_power(denominator).to_fppoly(), denominator


@dataclass(frozen=True)
class SupportReport:
    certificates: tuple
    depth: int

    @property
    def certified(self) -> bool:
        return all(certificate is not None for _, certificate in self.certificates)

    def as_dict(self) -> dict:
        return {
            "certified": self.certified,
            "depth": self.depth,
            "exponents": {
                str(e): (certificate.as_dict() if certificate is not None else None)
                for e, certificate in self.certificates
            },
        }


def support_in_monoid(f: PolyExpr, spec: PuiseuxMonoidSpec, depth: Optional[int] = None) -> SupportReport:
    """Certify every exponent of f in the monoid; denominators outside the localization fail fast."""
    depth = spec.resolve_depth(depth)
    certificates = []
    for exponent in f.support():
        certificate: Optional[MembershipCertificate] = None
        if reachable(exponent, spec, depth):
            certificate = membership(exponent, spec, depth)
        certificates.append((exponent, certificate))
    return SupportReport(tuple(certificates), depth)


@dataclass(frozen=True)
class SplitResult:
    """Outcome of a bounded search for f = g h with non-unit g, h in F_p[M]."""

    expression: PolyExpr
    verdict: AtomVerdict
    budget: SearchBudget
    witness: Optional[tuple] = None
    refinement: Optional[int] = None
    groupings: int = 0
    reason: str = ""

    def as_dict(self) -> dict:
        report = {
            "expression": str(self.expression),
            "verdict": self.verdict.label,
            "budget": self.budget.as_dict(),
            "groupings": self.groupings,
        }
        if self.witness is not None:
            report["witness"] = [str(factor) for factor in self.witness]
        if self.refinement is not None:
            report["refinement"] = self.refinement
        if self.reason:
            report["reason"] = self.reason
        return report


def refinement_base(spec: PuiseuxMonoidSpec, depth: Optional[int] = None) -> int:
    """The factor m with which each refinement multiplies the clearing denominator."""
    if spec.kind is MonoidKind.MQR:
        return spec.schedule.q * spec.schedule.r
    return math.prod(localization_primes(spec, depth))


def _monomial_split(f: PolyExpr, spec: PuiseuxMonoidSpec, budget: SearchBudget) -> SplitResult:
    exponent, coefficient = f.terms[0]
    check = element_atom_check(exponent, spec, budget.depth)
    if check.is_atom:
        return SplitResult(f, AtomVerdict.ATOM, budget, reason="exponent is an atom of the monoid")
    first = next(iter(check.certificate.coefficients))
    piece = check.certificate.values[first]
    witness = (
        PolyExpr.monomial(coefficient, piece, f.modulus),
        PolyExpr.monomial(1, exponent - piece, f.modulus),
    )
    return SplitResult(f, AtomVerdict.REDUCIBLE, budget, witness, reason="exponent splits in the monoid")


def _groupings(factors: tuple) -> Iterable[tuple]:
    """Exponent vectors of the proper nonempty sub-multisets of a factorization."""
    ranges = [range(multiplicity + 1) for _, multiplicity in factors]
    full = tuple(multiplicity for _, multiplicity in factors)
    for choice in itertools.product(*ranges):
        if any(choice) and choice != full:
            yield choice


def split_search(
    f: PolyExpr, spec: PuiseuxMonoidSpec, budget: SearchBudget = DEFAULT_SEARCH_BUDGET
) -> SplitResult:
    """
    Search for a factorization f = g h into non-units of F_p[M].

    For j = 0..budget.refinements, f(x^{D m^j}) is factored in F_p[x] and every grouping of its
    irreducible factors into two blocks is mapped back and tested against the monoid.
    """
    if f.modulus is None:
        raise LabDomainError("polyexpr.not-finite-field", "The split search runs over F_p coefficients.")
    if f.is_zero():
        raise LabDomainError("polyexpr.zero", "The zero expression is neither a unit nor an atom.")
    if is_unit(f):
        return SplitResult(f, AtomVerdict.UNIT, budget)
    if not support_in_monoid(f, spec, budget.depth).certified:
        logging.warning("Support of %s is not certified in %s at depth %d.", f, spec.describe(), budget.depth)
        return SplitResult(f, AtomVerdict.UNKNOWN, budget, reason="support not certified")
    if f.is_monomial():
        return _monomial_split(f, spec, budget)

    base = refinement_base(spec, budget.depth)
    denominator = f.exponent_denominator()
    examined = 0
    tried = set()
    for j in range(budget.refinements + 1):
        scale = denominator * base**j
        if scale in tried:
            continue
        tried.add(scale)
        factorization = factorize(f.substitute_power(scale).to_fppoly())
        for choice in _groupings(factorization.factors):
            examined += 1
            if examined > budget.max_groupings:
                logging.warning("Split search for %s exhausted %d groupings.", f, budget.max_groupings)
                return SplitResult(f, AtomVerdict.UNKNOWN, budget, groupings=examined - 1, reason="grouping budget")
            left = FpPoly.constant(factorization.unit.value, f.modulus)
            right = FpPoly.constant(1, f.modulus)
            for (factor, multiplicity), k in zip(factorization.factors, choice):
                left = left * factor**k
                right = right * factor ** (multiplicity - k)
            g = PolyExpr.from_fppoly(left).substitute_power(Fraction(1, scale))
            h = PolyExpr.from_fppoly(right).substitute_power(Fraction(1, scale))
            if all(support_in_monoid(part, spec, budget.depth).certified for part in (g, h)):
                logging.debug("Split of %s found at refinement %d: (%s)(%s)", f, j, g, h)
                return SplitResult(f, AtomVerdict.REDUCIBLE, budget, (g, h), j, examined)
    return SplitResult(f, AtomVerdict.ATOM, budget, groupings=examined)


def atom_test_bounded(
    f: PolyExpr, spec: PuiseuxMonoidSpec, budget: SearchBudget = DEFAULT_SEARCH_BUDGET
) -> SplitResult:
    """Unit, reducible (with a certified witness pair), atom-at-depth or unknown."""
    return split_search(f, spec, budget)


def _newton_value(newton: list, offset: int) -> int:
    """Value at nodes[0] + offset of the polynomial with Newton coefficients `newton`."""
    total, falling = 0, 1
    for j, c in enumerate(newton):
        total += c * falling
        falling *= offset - j
    return total


def _kronecker_candidates(f: Poly, k: int, nodes: list, values: list) -> Iterable[Poly]:
    """Integer polynomials g of degree k with g(node_i) dividing f(node_i); g(node_0) > 0."""
    choices = [[d for d in divisors(abs(v))] for v in values]
    signed = [choices[0]] + [[s * d for d in ds for s in (1, -1)] for ds in choices[1:]]
    lead = int(f.LC())
    # extra nodes prune candidates before any polynomial division
    extra = [(z - nodes[0], int(f.eval(z))) for z in (-1, nodes[-1] + 1)]
    for picked in itertools.product(*signed):
        # Newton forward differences at consecutive nodes; integer polynomials have Δ^j g(0) ≡ 0 mod j!.
        table = list(picked)
        newton = []
        for j in range(k + 1):
            if table[0] % math.factorial(j):
                break
            newton.append(table[0] // math.factorial(j))
            table = [b - a for a, b in zip(table, table[1:])]
        else:
            if newton[k] == 0 or lead % newton[k]:
                continue
            if any(value and (gz := _newton_value(newton, offset)) and value % gz for offset, value in extra):
                continue
            if any(value and not _newton_value(newton, offset) for offset, value in extra):
                continue
            g = Poly(0, X, domain=ZZ)
            falling = Poly(1, X, domain=ZZ)
            for j, c in enumerate(newton):
                g = g + falling * c
                falling = falling * Poly(X - nodes[0] - j, X, domain=ZZ)
            yield g


def kronecker_split(f: Poly) -> Optional[tuple]:
    """Find f = g h in Z[x] with g, h nonconstant, for deg f <= 4; None if f is indecomposable."""
    n = f.degree()
    if n > 4:
        raise LabDomainError("kronecker.degree", f"Kronecker splitting is limited to degree 4, got {n}.")
    if n < 2:
        return None
    for k in range(1, n // 2 + 1):
        nodes = list(range(k + 1))
        values = [int(f.eval(node)) for node in nodes]
        for node, value in zip(nodes, values):
            if value == 0:
                root = Poly(X - node, X, domain=ZZ)
                return root, f.exquo(root)
        for g in _kronecker_candidates(f, k, nodes, values):
            quotient, remainder = f.div(g)
            if remainder.is_zero and all(c.is_integer for c in quotient.all_coeffs()):
                return g, quotient.set_domain(ZZ)
    return None


def indecomposable(
    f: Union[PolyExpr, FpPoly],
    spec: Optional[PuiseuxMonoidSpec] = None,
    budget: SearchBudget = DEFAULT_SEARCH_BUDGET,
) -> Optional[bool]:
    """
    Whether f is not a product of two nonconstant expressions.

    Without a monoid the exponents live in N_0 and the answer is exact. With a monoid the
    answer comes from `split_search` and is None when its budget runs out.
    """
    if isinstance(f, FpPoly):
        f = PolyExpr.from_fppoly(f)
    if f.is_constant():
        raise LabDomainError("polyexpr.constant", "Indecomposability is undefined for constants.")
    if spec is not None:
        verdict = split_search(f, spec, budget).verdict
        if verdict is AtomVerdict.UNKNOWN:
            return None
        return verdict is AtomVerdict.ATOM
    if f.modulus is not None:
        return len(factorize(f.to_fppoly()).atoms()) == 1
    return kronecker_split(f.to_integer_poly()) is None


@dataclass(frozen=True)
class AscentFactorization:
    """f = d * a_1 * ... * a_l with indecomposable a_i whose coefficients have only unit common divisors."""

    source: PolyExpr
    d: Union[int, Fraction]
    atoms: tuple

    def expand(self) -> PolyExpr:
        product = PolyExpr.constant(self.d, self.source.modulus)
        for atom in self.atoms:
            product = product * atom
        return product

    def as_dict(self) -> dict:
        return {"f": str(self.source), "d": str(self.d), "atoms": [str(a) for a in self.atoms]}


def _integer_pieces(poly: Poly) -> list:
    split = kronecker_split(poly)
    if split is None:
        return [poly]
    g, h = split
    return _integer_pieces(g) + _integer_pieces(h)


def ascent_factorization(f: PolyExpr) -> AscentFactorization:
    """
    Factor a standard polynomial over F_p or Z into a constant times indecomposables.

    Over F_p the constant is the leading coefficient and the atoms are monic. Over Z the
    constant collects the content and signs, and every atom is primitive with positive leading
    coefficient.
    """
    if f.is_zero() or f.is_constant():
        raise LabDomainError("ascent.constant", "Ascent factorization needs a nonconstant polynomial.")
    if f.exponent_denominator() != 1:
        raise LabDomainError("ascent.not-standard", f"{f} has non-integer exponents.")
    if f.modulus is not None:
        factorization = factorize(f.to_fppoly())
        atoms = tuple(PolyExpr.from_fppoly(atom) for atom in factorization.atoms())
        return AscentFactorization(f, factorization.unit.value, atoms)

    poly = f.to_integer_poly()
    content = math.gcd(*(int(c) for c in poly.coeffs()))
    d = content if poly.LC() > 0 else -content
    pieces = _integer_pieces(poly.exquo_ground(d))
    atoms = []
    for piece in pieces:
        if piece.LC() < 0:
            piece = -piece
            d = -d
        atoms.append(PolyExpr.from_integer_poly(piece))
    atoms.sort(key=lambda a: (a.degree, str(a)))
    return AscentFactorization(f, Fraction(d), tuple(atoms))


@dataclass(frozen=True)
class NonascentPair:
    """A prime p, the exponent base d and f_d with f_d(x^{d^n}) irreducible over F_p for all n."""

    p: int
    d: int
    f_d: FpPoly

    @property
    def spec(self) -> PuiseuxMonoidSpec:
        return PuiseuxMonoidSpec.mqr(self.p, self.d)

    def image(self, n: int) -> FpPoly:
        """f_d(x^{d^n})."""
        return self.f_d.compose_power(self.d**n)

    def as_dict(self) -> dict:
        return {"p": self.p, "q": self.p, "r": self.d, "f_d": str(self.f_d)}


def nonascent_pair(p: int) -> NonascentPair:
    """
    The ingredients of the non-ascent construction over F_p, with M = M_{p,d}.

    p = 2: d = 3, f_d = x^2 + x + 1. p = 1 mod 4: d = p - 1, f_d = x - a for the least primitive
    root a. p = 3 mod 4: d = 2, f_d = x^2 - 2a x - 1 with a from the trinomial recursion.
    """
    require_prime(p)
    if p == 2:
        return NonascentPair(2, 3, FpPoly((1, 1, 1), 2))
    if p % 4 == 1:
        a = primitive_roots(p)[0]
        return NonascentPair(p, p - 1, FpPoly((-a.value, 1), p))
    a = trinomial_parameter(p)
    return NonascentPair(p, 2, FpPoly((-1, -2 * a.value, 1), p))


def nonascent_image_check(pair: NonascentPair, n: int) -> bool:
    return is_irreducible_oracle(pair.image(n))


@dataclass(frozen=True)
class DistinguishedSplit:
    a_j: PolyExpr
    divisor: PolyExpr
    quotient: Optional[PolyExpr]
    exact: bool
    support: Optional[object] = None

    @property
    def certified(self) -> bool:
        return self.exact and self.support is not None and self.support.certified

    def as_dict(self) -> dict:
        report = {
            "a_j": str(self.a_j),
            "divisor": str(self.divisor),
            "exact": self.exact,
            "certified": self.certified,
        }
        if self.quotient is not None:
            report["B"] = str(self.quotient)
        if self.support is not None:
            report["support"] = self.support.as_dict()
        return report


def distinguished_atom_split(
    a_j: PolyExpr, pair: NonascentPair, n: int, depth: Optional[int] = None, max_steps: int = 10_000
) -> DistinguishedSplit:
    """
    Recover B with a_j = f_d(x^{1/p^n}) B(x) and certify supp B in M_{p,d}.

    Substituting x -> x^{(pd)^n} turns this into f_d(x^{d^n}) dividing the image of a_j in
    F_p[x]; the division is carried out in the monoid algebra, where it is the same statement.
    """
    if a_j.modulus != pair.p:
        raise PreconditionError(
            "nonascent.domain-mismatch", f"a_j has coefficients in {a_j.domain}, expected F_{pair.p}."
        )
    if n < 0:
        raise LabDomainError("nonascent.bad-n", f"n = {n} must be nonnegative.")
    divisor = PolyExpr.from_fppoly(pair.f_d).substitute_power(Fraction(1, pair.p**n))
    quotient, remainder = a_j.divide(divisor, max_steps)
    if not remainder.is_zero():
        return DistinguishedSplit(a_j, divisor, None, False)
    exact = divisor * quotient == a_j
    support = support_in_monoid(quotient, pair.spec, depth)
    return DistinguishedSplit(a_j, divisor, quotient, exact, support)
