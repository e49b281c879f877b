"""
The rings Z[x] + K[x]x^2 for Q ⊆ K ⊆ Q(s,t), polynomials over them in y, and the checks built
around them: the order-coefficient atomicity criterion, almost/quasi-atomic witnesses, and a
refuter for claimed factorizations of F(y)(s x^2 y + t x^2) into irreducibles.

With K = Q(s,t) the ring Z + Zx + x^2 K[x] stands in for Z + Zx + x^2 R[x], the indeterminates
s, t playing two algebraically independent reals.
"""
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Union

from sympy import QQ, Poly, Rational, Symbol, isprime
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring

from puiseuxlab.arith import MPOLY_RING, RatFunc, Scalar
from puiseuxlab.constants import DEFAULT_PROBE_BUDGET, AtomVerdict, CandidateVerdict, ProbeBudget, TopField
from puiseuxlab.errors import LabDomainError, PreconditionError
from puiseuxlab.utils import format_power, format_term, join_terms

RING4, S4, T4, X4, Y4 = ring("s,t,x,y", QQ, order=grlex)
X = Symbol("x")

Coefficient = Union[RatFunc, Scalar]


@dataclass(frozen=True)
class TowerSpec:
    """Z ⊆ Q ⊆ K with K = `top`; the ring in question is Z[x] + K[x]x^2."""

    top: TopField = TopField.QST

    @classmethod
    def from_label(cls, label: str) -> "TowerSpec":
        labels = {"ZQ": TopField.Q, "ZQS": TopField.QS, "ZQST": TopField.QST}
        try:
            return cls(labels[label.upper()])
        except KeyError:
            raise LabDomainError(
                "tower.unknown", f"Unknown ring {label!r}; expected one of {sorted(labels)}."
            ) from None

    @property
    def label(self) -> str:
        return f"Z[x] + {self.top.label}[x]x^2"

    def in_top(self, c: RatFunc) -> bool:
        return c.variables() <= self.top.indeterminates

    def as_dict(self) -> dict:
        return {"S": "Z", "F": "Q", "K": self.top.label}


MID_TOWER = TowerSpec(TopField.Q)
NONASCENT_TOWER = TowerSpec(TopField.QST)


@dataclass(frozen=True)
class SubringPoly:
    """A polynomial in x over Q(s,t), coefficients listed from degree 0 upward."""

    coefficients: tuple = ()

    def __post_init__(self):
        coeffs = [RatFunc.coerce(c) for c in self.coefficients]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def monomial(cls, c: Coefficient, k: int) -> "SubringPoly":
        return cls(tuple([0] * k + [c]))

    @classmethod
    def constant(cls, c: Coefficient) -> "SubringPoly":
        return cls((c,))

    @classmethod
    def from_dict(cls, mapping: dict) -> "SubringPoly":
        if not mapping:
            return cls()
        coeffs: list = [RatFunc.constant(0)] * (max(mapping) + 1)
        for k, c in mapping.items():
            coeffs[k] = coeffs[k] + RatFunc.coerce(c)
        return cls(tuple(coeffs))

    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def order(self) -> int:
        if self.is_zero():
            raise LabDomainError("subring.zero", "The zero polynomial has no order.")
        return next(k for k, c in enumerate(self.coefficients) if not c.is_zero())

    @property
    def order_coefficient(self) -> RatFunc:
        return self.coefficients[self.order]

    def coefficient(self, k: int) -> RatFunc:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else RatFunc.constant(0)

    def terms(self) -> dict:
        return {k: c for k, c in enumerate(self.coefficients) if not c.is_zero()}

    def scale(self, c: Coefficient) -> "SubringPoly":
        c = RatFunc.coerce(c)
        return SubringPoly(tuple(c * coefficient for coefficient in self.coefficients))

    def __add__(self, other):
        other = _as_subring_poly(other)
        size = max(len(self.coefficients), len(other.coefficients))
        return SubringPoly(tuple(self.coefficient(k) + other.coefficient(k) for k in range(size)))

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-_as_subring_poly(other))

    def __mul__(self, other):
        if isinstance(other, (RatFunc, int, Fraction)):
            return self.scale(other)
        products: dict = {}
        for i, a in self.terms().items():
            for j, b in other.terms().items():
                products[i + j] = products.get(i + j, RatFunc.constant(0)) + a * b
        return SubringPoly.from_dict(products)

    __rmul__ = __mul__

    def __str__(self):
        pieces = [format_term(c, format_power("x", Fraction(k))) for k, c in sorted(self.terms().items(), reverse=True)]
        return join_terms(pieces)

    def __repr__(self):
        return f"SubringPoly({self})"


def _as_subring_poly(value) -> SubringPoly:
    if isinstance(value, SubringPoly):
        return value
    return SubringPoly.constant(RatFunc.coerce(value))


def membership_subring(f: SubringPoly, spec: TowerSpec = NONASCENT_TOWER) -> bool:
    """True iff the x^0 and x^1 coefficients are integers and the rest lie in K."""
    f = _as_subring_poly(f)
    for k, c in f.terms().items():
        if k < 2 and not c.is_integer():
            return False
        if not spec.in_top(c):
            return False
    return True


def _require_member(f: SubringPoly, spec: TowerSpec) -> SubringPoly:
    f = _as_subring_poly(f)
    if f.is_zero():
        raise LabDomainError("subring.zero", "The zero polynomial is excluded.")
    if not membership_subring(f, spec):
        raise LabDomainError("subring.not-member", f"{f} is not an element of {spec.label}.")
    return f


def is_atomic_element(f: SubringPoly, spec: TowerSpec = NONASCENT_TOWER) -> bool:
    """Atomic in Z[x] + K[x]x^2 iff the order coefficient is an integer."""
    f = _require_member(f, spec)
    return f.order_coefficient.is_integer()


def almost_atomic_witness(f: SubringPoly, spec: TowerSpec = MID_TOWER) -> int:
    """The denominator s of the order coefficient; s f is atomic."""
    f = _require_member(f, spec)
    coefficient = f.order_coefficient
    if not coefficient.is_constant():
        raise LabDomainError(
            "subring.not-in-fraction-field", f"Order coefficient {coefficient} does not lie in Q.", data={"f": str(f)}
        )
    return coefficient.constant_value().denominator


def quasi_atomic_witness(f: SubringPoly, spec: TowerSpec = NONASCENT_TOWER) -> SubringPoly:
    """k^{-1} x^2 for the order coefficient k of f; the product has order coefficient 1."""
    f = _require_member(f, spec)
    return SubringPoly.monomial(f.order_coefficient.inverse(), 2)


@dataclass(frozen=True)
class NotAlmostAtomicRecord:
    kappa: RatFunc
    f: SubringPoly
    product: SubringPoly
    order_coefficient: RatFunc

    @property
    def violates(self) -> bool:
        return not self.order_coefficient.is_integer()

    def as_dict(self) -> dict:
        return {
            "kappa": str(self.kappa),
            "f": str(self.f),
            "product": str(self.product),
            "order_coefficient": str(self.order_coefficient),
            "in_S": not self.violates,
        }


def not_almost_atomic_witness(
    spec: TowerSpec, kappa: Coefficient, f: SubringPoly
) -> NotAlmostAtomicRecord:
    """Show that f (kappa x^2) fails the criterion for kappa in K outside Q and atomic f."""
    kappa = RatFunc.coerce(kappa)
    if kappa.is_constant():
        raise PreconditionError("subring.kappa-in-F", f"kappa = {kappa} lies in Q.", data={"kappa": str(kappa)})
    if not spec.in_top(kappa):
        raise LabDomainError("subring.kappa-outside-K", f"kappa = {kappa} does not lie in {spec.top.label}.")
    if not is_atomic_element(f, spec):
        raise PreconditionError("subring.not-atomic", f"{f} is not atomic.")
    product = f * SubringPoly.monomial(kappa, 2)
    return NotAlmostAtomicRecord(kappa, f, product, product.order_coefficient)


@dataclass(frozen=True)
class DescentStep:
    k: int
    cofactor: SubringPoly
    member: bool
    unit: bool
    atomic: bool

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "cofactor": str(self.cofactor),
            "member": self.member,
            "unit": self.unit,
            "atomic": self.atomic,
        }


def is_unit(f: SubringPoly) -> bool:
    """The units of Z[x] + K[x]x^2 are ±1."""
    f = _as_subring_poly(f)
    return f.degree == 0 and f.coefficients[0] in (RatFunc.constant(1), RatFunc.constant(-1))


def infinite_descent_demo(q: Scalar, a: int, depth: int, spec: TowerSpec = MID_TOWER) -> list:
    """q x^2 = a^k (q / a^k) x^2 for k = 1..depth, with each cofactor checked."""
    q = Fraction(q)
    if q == 0:
        raise LabDomainError("descent.zero", "q must be nonzero.")
    if not isinstance(a, int) or not isprime(abs(a)):
        raise PreconditionError("descent.not-an-atom", f"a = {a} is not an atom of Z.", data={"a": a})
    if depth < 1:
        raise LabDomainError("descent.bad-depth", f"Depth {depth} must be positive.")
    steps = []
    for k in range(1, depth + 1):
        cofactor = SubringPoly.monomial(q / a**k, 2)
        member = membership_subring(cofactor, spec)
        steps.append(DescentStep(k, cofactor, member, is_unit(cofactor), member and is_atomic_element(cofactor, spec)))
    return steps


@dataclass(frozen=True)
class RYPoly:
    """A polynomial in y whose coefficients are SubringPolys in x, listed from y^0 upward."""

    coefficients: tuple = ()

    def __post_init__(self):
        coeffs = [_as_subring_poly(c) for c in self.coefficients]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def from_dict(cls, mapping: dict) -> "RYPoly":
        """Build from {(x-degree, y-degree): coefficient}."""
        rows: dict = {}
        for (k, j), c in mapping.items():
            rows.setdefault(j, {})
            rows[j][k] = rows[j].get(k, RatFunc.constant(0)) + RatFunc.coerce(c)
        if not rows:
            return cls()
        return cls(tuple(SubringPoly.from_dict(rows.get(j, {})) for j in range(max(rows) + 1)))

    @classmethod
    def constant(cls, c: Coefficient) -> "RYPoly":
        return cls((SubringPoly.constant(c),))

    def as_dict(self) -> dict:
        return {(k, j): c for j, row in enumerate(self.coefficients) for k, c in row.terms().items()}

    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def y_degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def x_degree(self) -> int:
        return max((row.degree for row in self.coefficients), default=-1)

    def is_member(self, spec: TowerSpec = NONASCENT_TOWER) -> bool:
        return all(membership_subring(row, spec) for row in self.coefficients)

    def is_unit(self) -> bool:
        return self.y_degree == 0 and is_unit(self.coefficients[0])

    def low_coefficient(self) -> Optional[RatFunc]:
        """The first nonzero coefficient of x^0 y^j or x^1 y^j, scanning j upward."""
        for row in self.coefficients:
            for k in (0, 1):
                if not row.coefficient(k).is_zero():
                    return row.coefficient(k)
        return None

    def scale(self, c: Coefficient) -> "RYPoly":
        return RYPoly(tuple(row.scale(c) for row in self.coefficients))

    def __add__(self, other):
        other = _as_ry_poly(other)
        size = max(len(self.coefficients), len(other.coefficients))
        zero = SubringPoly()
        return RYPoly(
            tuple(
                (self.coefficients[j] if j < len(self.coefficients) else zero)
                + (other.coefficients[j] if j < len(other.coefficients) else zero)
                for j in range(size)
            )
        )

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-_as_ry_poly(other))

    def __mul__(self, other):
        if isinstance(other, (RatFunc, int, Fraction)):
            return self.scale(other)
        other = _as_ry_poly(other)
        products: dict = {}
        for j1, row1 in enumerate(self.coefficients):
            for j2, row2 in enumerate(other.coefficients):
                products[j1 + j2] = products.get(j1 + j2, SubringPoly()) + row1 * row2
        size = max(products, default=-1) + 1
        return RYPoly(tuple(products.get(j, SubringPoly()) for j in range(size)))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (RatFunc, int, Fraction, SubringPoly)):
            other = _as_ry_poly(other)
        if not isinstance(other, RYPoly):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(self.coefficients)

    def __str__(self):
        pieces = []
        for (k, j), c in sorted(self.as_dict().items(), key=lambda item: (-item[0][1], -item[0][0])):
            monomial = "*".join(p for p in (format_power("x", Fraction(k)), format_power("y", Fraction(j))) if p)
            pieces.append(format_term(c, monomial))
        return join_terms(pieces)

    def __repr__(self):
        return f"RYPoly({self})"


def _as_ry_poly(value) -> RYPoly:
    if isinstance(value, RYPoly):
        return value
    return RYPoly((_as_subring_poly(value),))


def target_element() -> RYPoly:
    """a y + b with a = s x^2 and b = t x^2."""
    return RYPoly.from_dict({(2, 1): RatFunc.variable("s"), (2, 0): RatFunc.variable("t")})


def _lift(f: RYPoly) -> tuple:
    """(P, L) with P in Q[s,t,x,y] and L in Q[s,t] such that f = P / L."""
    entries = f.as_dict()
    common = MPOLY_RING.one
    for denominator in {c.denominator for c in entries.values()}:
        common = common * denominator
    lifted = {}
    for (k, j), c in entries.items():
        numerator = c.numerator * common.exquo(c.denominator)
        for (a, b), coeff in numerator.terms():
            lifted[(a, b, k, j)] = lifted.get((a, b, k, j), QQ(0)) + coeff
    return RING4.from_dict(lifted) if lifted else RING4.zero, common


def _lower(poly) -> RYPoly:
    rows: dict = {}
    for (a, b, k, j), coeff in poly.terms():
        rows.setdefault((k, j), {})[(a, b)] = coeff
    return RYPoly.from_dict({key: RatFunc.polynomial(MPOLY_RING.from_dict(terms)) for key, terms in rows.items()})


def _scalar_part(poly):
    """An element of Q[s,t,x,y] free of x and y, as an element of Q[s,t]."""
    return MPOLY_RING.from_dict({(a, b): coeff for (a, b, _, _), coeff in poly.terms()})


def _involves_xy(poly) -> bool:
    return any(k or j for (_, _, k, j) in poly.monoms())


@dataclass(frozen=True)
class ProbeResult:
    element: RYPoly
    verdict: AtomVerdict
    budget: ProbeBudget
    witness: Optional[tuple] = None
    groupings: int = 0

    def as_dict(self) -> dict:
        report = {
            "element": str(self.element),
            "verdict": self.verdict.label,
            "budget": self.budget.as_dict(),
            "groupings": self.groupings,
        }
        if self.witness is not None:
            report["witness"] = [str(part) for part in self.witness]
        return report


def _candidate_scalars(g_part: RYPoly, h_part: RYPoly, bound: int) -> Iterable[RatFunc]:
    multipliers = [sign * n for n in range(1, bound + 1) for sign in (1, -1)]
    u = g_part.low_coefficient()
    if u is not None:
        return [RatFunc.constant(n) / u for n in multipliers]
    v = h_part.low_coefficient()
    if v is not None:
        return [v / n for n in multipliers]
    return [RatFunc.constant(n) for n in multipliers]


def member_split_probe(
    f: RYPoly, spec: TowerSpec = NONASCENT_TOWER, budget: ProbeBudget = DEFAULT_PROBE_BUDGET
) -> ProbeResult:
    """
    Look for f = g h with g, h non-unit members of R[y].

    f is factored in Q[s,t,x,y]; its factors free of x and y are collected into a scalar
    kappa ∈ K. Each sub-multiset G of the remaining factors, with H = kappa * (the rest), is
    rescaled as g = cG, h = H/c for c fixed by the integrality of the lowest x-coefficients and
    an integer multiplier up to `budget.multiplier_bound`.
    """
    f = _as_ry_poly(f)
    if f.is_zero():
        raise LabDomainError("subring.zero", "The zero polynomial is excluded.")
    if f.is_unit():
        return ProbeResult(f, AtomVerdict.UNIT, budget)
    lifted, common = _lift(f)
    leading, factors = lifted.factor_list()
    scalar = MPOLY_RING(leading)
    moving = []
    for factor, multiplicity in factors:
        if _involves_xy(factor):
            moving.append((factor, multiplicity))
        else:
            scalar = scalar * _scalar_part(factor) ** multiplicity
    kappa = RatFunc(scalar, common)

    total = 1
    for _, multiplicity in moving:
        total *= multiplicity + 1
    if total > budget.max_groupings:
        logging.warning("Member-split probe for %s needs %d groupings, over budget %d.", f, total, budget.max_groupings)
        return ProbeResult(f, AtomVerdict.UNKNOWN, budget, groupings=0)

    examined = 0
    for choice in itertools.product(*(range(m + 1) for _, m in moving)):
        examined += 1
        g_lift, h_lift = RING4.one, RING4.one
        for (factor, multiplicity), k in zip(moving, choice):
            g_lift *= factor**k
            h_lift *= factor ** (multiplicity - k)
        g_part = _lower(g_lift)
        h_part = _lower(h_lift).scale(kappa)
        for c in _candidate_scalars(g_part, h_part, budget.multiplier_bound):
            g, h = g_part.scale(c), h_part.scale(c.inverse())
            if g.is_unit() or h.is_unit():
                continue
            if g.is_member(spec) and h.is_member(spec):
                logging.debug("Member split of %s: (%s)(%s)", f, g, h)
                return ProbeResult(f, AtomVerdict.REDUCIBLE, budget, (g, h), examined)
    return ProbeResult(f, AtomVerdict.ATOM, budget, groupings=examined)


@dataclass(frozen=True)
class Refutation:
    verdict: CandidateVerdict
    reason: str
    detail: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"verdict": self.verdict.label, "reason": self.reason, **self.detail}


def refute_quasi_atomic_candidate(
    F: RYPoly,
    claimed_factors: list,
    spec: TowerSpec = NONASCENT_TOWER,
    budget: ProbeBudget = DEFAULT_PROBE_BUDGET,
) -> Refutation:
    """
    Check a claimed factorization of F (a y + b) into irreducibles of R[y].

    The first failed condition decides: a nonempty list, the exact product, membership of every
    factor, then a member-split probe on each factor. A factor the probe cannot settle makes
    the verdict unknown-at-budget.
    """
    if not claimed_factors:
        return Refutation(CandidateVerdict.INVALID, "empty-factor-list")
    factors = [_as_ry_poly(factor) for factor in claimed_factors]
    product = RYPoly.constant(1)
    for factor in factors:
        product = product * factor
    expected = _as_ry_poly(F) * target_element()
    if product != expected:
        return Refutation(
            CandidateVerdict.INVALID, "product-mismatch", {"product": str(product), "expected": str(expected)}
        )
    for index, factor in enumerate(factors):
        if not factor.is_member(spec):
            return Refutation(CandidateVerdict.INVALID, "non-member", {"index": index, "factor": str(factor)})
    unsettled = []
    for index, factor in enumerate(factors):
        probe = member_split_probe(factor, spec, budget)
        if probe.verdict is AtomVerdict.UNIT:
            return Refutation(CandidateVerdict.INVALID, "unit-factor", {"index": index, "factor": str(factor)})
        if probe.verdict is AtomVerdict.REDUCIBLE:
            return Refutation(
                CandidateVerdict.INVALID,
                "reducible-factor",
                {"index": index, "factor": str(factor), "witness": [str(part) for part in probe.witness]},
            )
        if probe.verdict is AtomVerdict.UNKNOWN:
            unsettled.append(index)
    if unsettled:
        return Refutation(CandidateVerdict.UNKNOWN, "probe-budget", {"indices": unsettled, "budget": budget.as_dict()})
    return Refutation(CandidateVerdict.VALID, "no-refutation-found", {"budget": budget.as_dict()})


def _check_exponent(e: int):
    if e not in (0, 1, 2):
        raise LabDomainError("claim.bad-exponent", f"e = {e} must lie in {{0, 1, 2}}.")


def _p_polynomials(T: list, e: int, gamma: RatFunc) -> list:
    s, t = RatFunc.variable("s"), RatFunc.variable("t")
    shift = SubringPoly.monomial(1, 2 - e)
    padded = [SubringPoly()] + [_as_subring_poly(poly) for poly in T] + [SubringPoly()]
    return [
        shift * (padded[i + 1].scale(t / gamma) + padded[i].scale(s / gamma)) for i in range(len(T) + 1)
    ]


@dataclass(frozen=True)
class ConstraintRow:
    index: int
    p: SubringPoly
    member: bool
    violations: tuple

    def as_dict(self) -> dict:
        return {
            "index": self.index,
            "p": str(self.p),
            "member": self.member,
            "violations": [{"degree": k, "coefficient": str(c)} for k, c in self.violations],
        }


def claim1_constraints(T: list, e: int, gamma: Coefficient) -> list:
    """
    p_i = (t/γ) x^{2-e} T_i + (s/γ) x^{2-e} T_{i-1} for i = 0..d+1, with T_{-1} = T_{d+1} = 0.

    Each row reports whether p_i lies in Z + Zx + x^2 Q(s,t)[x] and which of its x^0, x^1
    coefficients fail to be integers.
    """
    _check_exponent(e)
    gamma = RatFunc.coerce(gamma)
    if gamma.is_zero():
        raise LabDomainError("claim.zero-gamma", "gamma must be nonzero.")
    rows = []
    for i, p in enumerate(_p_polynomials(T, e, gamma)):
        violations = tuple((k, p.coefficient(k)) for k in (0, 1) if not p.coefficient(k).is_integer())
        rows.append(ConstraintRow(i, p, membership_subring(p, NONASCENT_TOWER), violations))
    return rows


@dataclass(frozen=True)
class Requirement:
    index: int
    statement: str
    value: RatFunc

    @property
    def satisfied(self) -> bool:
        return self.value.is_integer()

    def as_dict(self) -> dict:
        return {"index": self.index, "requires": self.statement, "value": str(self.value), "satisfied": self.satisfied}


@dataclass(frozen=True)
class ClaimOneReport:
    low_indices: tuple
    requirements: tuple

    @property
    def two_splits_off(self) -> bool:
        """With no T_i of order below e, 2 divides every p_i in R and A = 2 (A/2)."""
        return not self.low_indices

    def as_dict(self) -> dict:
        return {
            "D": list(self.low_indices),
            "two_splits_off": self.two_splits_off,
            "requirements": [r.as_dict() for r in self.requirements],
        }


def claim1_requirements(T: list, e: int, gamma: Coefficient) -> ClaimOneReport:
    """
    The integrality requirements forced on the order coefficients c_i of T_i.

    For i in D = {i : T_i != 0, ord T_i < e}: (t/γ) c_0 ∈ Z when i = 0; (t/γ) c_i ∈ Z or
    (s/γ) c_{i-1} ∈ Z when ord T_i is below or above ord T_{i-1}; (s/γ) c_d ∈ Z when i = d.
    """
    _check_exponent(e)
    gamma = RatFunc.coerce(gamma)
    if gamma.is_zero():
        raise LabDomainError("claim.zero-gamma", "gamma must be nonzero.")
    s, t = RatFunc.variable("s"), RatFunc.variable("t")
    polys = [_as_subring_poly(poly) for poly in T]
    d = len(polys) - 1
    low = tuple(i for i, poly in enumerate(polys) if not poly.is_zero() and poly.order < e)
    requirements = []
    for i in low:
        c_i = polys[i].order_coefficient
        if i == 0:
            requirements.append(Requirement(0, "(t/gamma)*c_0", t / gamma * c_i))
        elif not polys[i - 1].is_zero():
            previous = polys[i - 1]
            if polys[i].order < previous.order:
                requirements.append(Requirement(i, f"(t/gamma)*c_{i}", t / gamma * c_i))
            elif polys[i].order > previous.order:
                requirements.append(Requirement(i, f"(s/gamma)*c_{i - 1}", s / gamma * previous.order_coefficient))
        if i == d:
            requirements.append(Requirement(d, f"(s/gamma)*c_{d}", s / gamma * c_i))
    return ClaimOneReport(low, tuple(requirements))


def claim2_polynomials(z_s: int, Z_seq: list, s_index: int, d: int) -> list:
    """
    Q_{s+1} = -x + Z_0/z_s and Q_k = Z_{k-s-1}/z_s - x Q_{k-1} for k = s+2..d.

    Returns [(k, Q_k)] with Q_k a sympy Poly over QQ; deg Q_k = k - s.
    """
    if z_s == 0:
        raise LabDomainError("claim.zero-z", "z_s must be nonzero.")
    count = d - s_index
    if count <= 0:
        return []
    if len(Z_seq) < count:
        raise LabDomainError(
            "claim.short-sequence", f"Need {count} integers Z for k = {s_index + 1}..{d}, got {len(Z_seq)}."
        )
    x = Poly(X, X, domain=QQ)
    polynomials = []
    current = Poly(Rational(Z_seq[0], z_s), X, domain=QQ) - x
    polynomials.append((s_index + 1, current))
    for offset, k in enumerate(range(s_index + 2, d + 1), start=1):
        current = Poly(Rational(Z_seq[offset], z_s), X, domain=QQ) - x * current
        polynomials.append((k, current))
    return polynomials


def evaluate_at(poly: Poly, value: RatFunc) -> RatFunc:
    result = RatFunc.constant(0)
    for c in poly.all_coeffs():
        result = result * value + RatFunc.constant(Fraction(int(c.p), int(c.q)))
    return result


@dataclass(frozen=True)
class FinalContradiction:
    Q: Poly
    value: RatFunc

    @property
    def nonzero(self) -> bool:
        return not self.value.is_zero()

    def as_dict(self) -> dict:
        return {"Q": str(self.Q.as_expr()), "value_at_s_over_t": str(self.value), "nonzero": self.nonzero}


def final_contradiction(z_s: int, Q_l: Poly, c: Scalar) -> FinalContradiction:
    """Q(x) = z_s x Q_l(x) - c evaluated at s/t; a nonzero value rules out s/t as a root."""
    x = Poly(X, X, domain=QQ)
    Q = x * Q_l * z_s - Poly(Rational(Fraction(c).numerator, Fraction(c).denominator), X, domain=QQ)
    ratio = RatFunc.variable("s") / RatFunc.variable("t")
    return FinalContradiction(Q, evaluate_at(Q, ratio))
