"""
Puiseux monoids given by finitely many generators, and the atomic monoids M_{q,r}.

M_{q,r} is generated by a_n = (q^n r^{l_n} - 1) / (2 q^{2n} r^{l_n}) and
b_n = (q^n r^{l_n} + 1) / (2 q^{2n} r^{l_n}) for n >= 1, where the exponents l_n satisfy
r^{l_n - l_{n-1}} > 2 q^{n+1} with l_0 = 0. Only the generators up to a truncation depth D are
ever searched, so every negative answer here means "not at this depth".
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Union

from puiseuxlab.arith import Scalar, in_localization
from puiseuxlab.constants import AtomVerdict, LinkStatus, MonoidKind
from puiseuxlab.errors import LabDomainError, PreconditionError
from puiseuxlab.utils import lcm_all, prime_factors, require_prime


def _admissible_step(q: int, r: int, n: int) -> int:
    """Least k >= 1 with r^k > 2 q^{n+1}."""
    bound = 2 * q ** (n + 1)
    k, power = 1, r
    while power <= bound:
        k += 1
        power *= r
    return k


@dataclass(frozen=True)
class GeneratorSchedule:
    """
    The data (q, r, l) defining M_{q,r}.

    `ells` optionally fixes l_1, l_2, ... explicitly; it is validated against the growth
    condition and extended minimally past its last entry.
    """

    q: int
    r: int
    ells: tuple = ()

    def __post_init__(self):
        require_prime(self.q, "q")
        if not isinstance(self.r, int) or self.r < 2:
            raise LabDomainError("schedule.bad-r", f"r = {self.r} must be an integer at least 2.")
        if math.gcd(self.q, self.r) != 1:
            raise LabDomainError(
                "schedule.not-coprime",
                f"q = {self.q} and r = {self.r} are not coprime.",
                data={"q": self.q, "r": self.r},
            )
        object.__setattr__(self, "ells", tuple(self.ells))
        previous = 0
        for n, ell in enumerate(self.ells, start=1):
            if ell <= previous or self.r ** (ell - previous) <= 2 * self.q ** (n + 1):
                raise LabDomainError(
                    "schedule.inadmissible",
                    f"l_{n} = {ell} violates r^(l_n - l_(n-1)) > 2 q^(n+1).",
                    data={"n": n, "ell": ell, "previous": previous},
                )
            previous = ell

    def ell(self, n: int) -> int:
        if n < 0:
            raise LabDomainError("schedule.bad-index", f"Index n = {n} must be nonnegative.")
        if n == 0:
            return 0
        if n <= len(self.ells):
            return self.ells[n - 1]
        value = self.ells[-1] if self.ells else 0
        for k in range(len(self.ells) + 1, n + 1):
            value += _admissible_step(self.q, self.r, k)
        return value

    def generators(self, n: int) -> tuple:
        """(a_n, b_n)."""
        if n < 1:
            raise LabDomainError("schedule.bad-index", f"Generator index n = {n} must be positive.")
        core = self.q**n * self.r ** self.ell(n)
        denominator = 2 * self.q ** (2 * n) * self.r ** self.ell(n)
        return Fraction(core - 1, denominator), Fraction(core + 1, denominator)

    def primes(self) -> list:
        return sorted(set(prime_factors(self.q)) | set(prime_factors(self.r)))

    def as_dict(self) -> dict:
        return {"q": self.q, "r": self.r, "ells": list(self.ells)}


def ell_sequence(q: int, r: int, n: int) -> int:
    """Minimal admissible l_n, anchored at l_0 = 0."""
    if n < 1:
        raise LabDomainError("schedule.bad-index", f"Index n = {n} must be positive.")
    return GeneratorSchedule(q, r).ell(n)


def generators(schedule: GeneratorSchedule, n: int) -> tuple:
    return schedule.generators(n)


def _explicit_label(value: Fraction) -> str:
    return str(value)


@dataclass(frozen=True)
class PuiseuxMonoidSpec:
    """
    A Puiseux monoid presented by generators.

    Build one with `PuiseuxMonoidSpec.explicit(...)` or `PuiseuxMonoidSpec.mqr(...)`. For M_{q,r},
    `depth` is the default truncation index D; explicit monoids ignore it.
    """

    kind: MonoidKind
    explicit_generators: tuple = ()
    schedule: Optional[GeneratorSchedule] = None
    depth: int = 6

    def __post_init__(self):
        if self.depth < 1:
            raise LabDomainError("monoid.bad-depth", f"Depth {self.depth} must be positive.")
        if self.kind is MonoidKind.MQR and self.schedule is None:
            raise LabDomainError("monoid.missing-schedule", "An M_{q,r} monoid needs a generator schedule.")

    @classmethod
    def explicit(cls, values: Iterable[Scalar], depth: int = 6) -> "PuiseuxMonoidSpec":
        gens = sorted({Fraction(v) for v in values})
        if any(g <= 0 for g in gens):
            raise LabDomainError("monoid.nonpositive-generator", "Generators must be positive rationals.")
        return cls(MonoidKind.EXPLICIT, explicit_generators=tuple(gens), depth=depth)

    @classmethod
    def mqr(cls, q: int, r: int, depth: int = 6, ells: Iterable[int] = ()) -> "PuiseuxMonoidSpec":
        return cls(MonoidKind.MQR, schedule=GeneratorSchedule(q, r, tuple(ells)), depth=depth)

    def resolve_depth(self, depth: Optional[int]) -> int:
        depth = self.depth if depth is None else depth
        if depth < 1:
            raise LabDomainError("monoid.bad-depth", f"Depth {depth} must be positive.")
        return depth

    def generator_list(self, depth: Optional[int] = None) -> list:
        """[(label, value), ...] in presentation order: a1, b1, a2, b2, ... or ascending values."""
        if self.kind is MonoidKind.EXPLICIT:
            return [(_explicit_label(g), g) for g in self.explicit_generators]
        depth = self.resolve_depth(depth)
        gens = []
        for n in range(1, depth + 1):
            a, b = self.schedule.generators(n)
            gens.extend([(f"a{n}", a), (f"b{n}", b)])
        return gens

    def lookup(self, generator: Union[str, Scalar], depth: Optional[int] = None) -> tuple:
        """Find a generator by label or value; returns (label, value)."""
        for label, value in self.generator_list(depth):
            if generator == label or (not isinstance(generator, str) and Fraction(generator) == value):
                return label, value
        if isinstance(generator, str):
            try:
                target = Fraction(generator)
            except ValueError:
                target = None
            if target is not None:
                return self.lookup(target, depth)
        raise LabDomainError(
            "monoid.not-a-generator", f"{generator} is not a generator of {self.describe()} at this depth."
        )

    def describe(self) -> str:
        if self.kind is MonoidKind.EXPLICIT:
            return "<" + ", ".join(str(g) for g in self.explicit_generators) + ">"
        return f"M_{{{self.schedule.q},{self.schedule.r}}}"

    def as_dict(self) -> dict:
        if self.kind is MonoidKind.EXPLICIT:
            return {"kind": self.kind.label, "generators": [str(g) for g in self.explicit_generators]}
        return {"kind": self.kind.label, **self.schedule.as_dict(), "depth": self.depth}


@dataclass(frozen=True)
class MembershipCertificate:
    """A nonnegative integer combination of generators, keyed by generator label."""

    target: Fraction
    coefficients: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)

    def total(self) -> Fraction:
        return sum((self.values[label] * count for label, count in self.coefficients.items()), Fraction(0))

    def verify(self) -> bool:
        return all(count > 0 for count in self.coefficients.values()) and self.total() == self.target

    def size(self) -> int:
        """Number of generators in the sum, with repetition."""
        return sum(self.coefficients.values())

    def atoms(self) -> tuple:
        return tuple(label for label, count in self.coefficients.items() for _ in range(count))

    def as_dict(self) -> dict:
        return dict(self.coefficients)


class _CertificateSearch:
    """
    Exact search for nonnegative integer solutions of sum c_i g_i = target.

    Everything is scaled to integers by the common denominator L. Generators are visited deepest
    denominator first; before choosing c_i, the residue of the remainder modulo
    L / lcm(later denominators) must vanish, which pins c_i to one class mod a large step.
    """

    def __init__(self, gens: list, target: Fraction):
        self.order = sorted(range(len(gens)), key=lambda i: (-gens[i][1].denominator, gens[i][1]))
        self.presentation = [label for label, _ in gens]
        self.labels = [gens[i][0] for i in self.order]
        values = [gens[i][1] for i in self.order]
        self.scale = lcm_all([target.denominator, *(v.denominator for v in values)])
        self.weights = [v.numerator * (self.scale // v.denominator) for v in values]
        suffix = [1] * (len(values) + 1)
        for i in range(len(values) - 1, -1, -1):
            suffix[i] = math.lcm(suffix[i + 1], values[i].denominator)
        self.moduli = [self.scale // suffix[i + 1] for i in range(len(values))]
        self.remainder = target.numerator * (self.scale // target.denominator)
        self.dead: set = set()
        self.memo: dict = {}

    def _choices(self, i: int, rem: int) -> Iterable[int]:
        w, m = self.weights[i], self.moduli[i]
        if i == len(self.weights) - 1:
            return [rem // w] if rem % w == 0 else []
        g = math.gcd(w, m)
        residue = rem % m
        if residue % g:
            return []
        step = m // g
        start = (residue // g) * pow(w // g, -1, step) % step if step > 1 else 0
        return range(start, rem // w + 1, step)

    def first(self, i: int = 0, rem: Optional[int] = None) -> Optional[dict]:
        rem = self.remainder if rem is None else rem
        if rem == 0:
            return {}
        if i == len(self.weights) or (i, rem) in self.dead:
            return None
        for c in self._choices(i, rem):
            found = self.first(i + 1, rem - c * self.weights[i])
            if found is not None:
                if c:
                    found[self.labels[i]] = c
                return found
        self.dead.add((i, rem))
        return None

    def every(self, i: int = 0, rem: Optional[int] = None) -> list:
        rem = self.remainder if rem is None else rem
        if rem == 0:
            return [{}]
        if i == len(self.weights):
            return []
        key = (i, rem)
        if key not in self.memo:
            solutions = []
            for c in self._choices(i, rem):
                for sub in self.every(i + 1, rem - c * self.weights[i]):
                    solutions.append({**sub, self.labels[i]: c} if c else sub)
            self.memo[key] = solutions
        return self.memo[key]

    def ordered(self, coefficients: dict) -> dict:
        return {label: coefficients[label] for label in self.presentation if label in coefficients}


def _search(target: Scalar, gens: list) -> tuple:
    target = Fraction(target)
    if target < 0:
        raise LabDomainError("monoid.negative-target", f"Target {target} must be nonnegative.")
    return target, _CertificateSearch(gens, target)


def membership(target: Scalar, spec: PuiseuxMonoidSpec, depth: Optional[int] = None) -> Optional[MembershipCertificate]:
    """
    Certify target as a sum of generators up to `depth`.

    Returns None when no representation exists over those generators.
    """
    gens = spec.generator_list(depth)
    return _membership_over(target, gens)


def _membership_over(target: Scalar, gens: list) -> Optional[MembershipCertificate]:
    target, search = _search(target, gens)
    found = search.first()
    if found is None:
        return None
    values = dict(gens)
    coefficients = search.ordered(found)
    return MembershipCertificate(target, coefficients, {label: values[label] for label in coefficients})


def divides(
    b: Scalar, c: Scalar, spec: PuiseuxMonoidSpec, depth: Optional[int] = None
) -> Optional[MembershipCertificate]:
    """b |_M c, i.e. c - b ∈ M; the certificate is for c - b."""
    difference = Fraction(c) - Fraction(b)
    if difference < 0:
        return None
    return membership(difference, spec, depth)


@dataclass(frozen=True)
class AtomCheck:
    element: Fraction
    verdict: AtomVerdict
    depth: int
    certificate: Optional[MembershipCertificate] = None
    label: Optional[str] = None

    @property
    def is_atom(self) -> bool:
        return self.verdict is AtomVerdict.ATOM

    def as_dict(self) -> dict:
        report = {"element": str(self.element), "verdict": self.verdict.label, "depth": self.depth}
        if self.label:
            report["generator"] = self.label
        if self.certificate is not None:
            report["certificate"] = self.certificate.as_dict()
        return report


def is_atom_bounded(g: Union[str, Scalar], spec: PuiseuxMonoidSpec, depth: Optional[int] = None) -> AtomCheck:
    """
    Test whether a generator is a sum of the other generators at the given depth.

    A sum of two nonzero elements expands into at least two generators, none of which can be g
    itself, so this is the same as a certificate over the remaining generators.
    """
    depth = spec.resolve_depth(depth)
    label, value = spec.lookup(g, depth)
    others = [(other, v) for other, v in spec.generator_list(depth) if other != label]
    certificate = _membership_over(value, others)
    if certificate is None:
        return AtomCheck(value, AtomVerdict.ATOM, depth, label=label)
    return AtomCheck(value, AtomVerdict.REDUCIBLE, depth, certificate, label)


def element_atom_check(u: Scalar, spec: PuiseuxMonoidSpec, depth: Optional[int] = None) -> AtomCheck:
    """Atom test for an arbitrary element u of the monoid."""
    depth = spec.resolve_depth(depth)
    u = Fraction(u)
    if u == 0:
        return AtomCheck(u, AtomVerdict.UNIT, depth)
    certificate = membership(u, spec, depth)
    if certificate is None:
        raise LabDomainError("monoid.not-member", f"{u} has no certificate in {spec.describe()} at depth {depth}.")
    if certificate.size() > 1:
        return AtomCheck(u, AtomVerdict.REDUCIBLE, depth, certificate)
    (label,) = certificate.coefficients
    return is_atom_bounded(label, spec, depth)


@lru_cache(maxsize=64)
def atom_generators(spec: PuiseuxMonoidSpec, depth: int) -> tuple:
    """The generators that pass the bounded atom test; for M_{q,r} this is all of them."""
    gens = spec.generator_list(depth)
    return tuple((label, value) for label, value in gens if is_atom_bounded(label, spec, depth).is_atom)


def factorizations_bounded(
    target: Scalar, spec: PuiseuxMonoidSpec, depth: Optional[int] = None, limit: int = 10_000
) -> list:
    """Every multiset of depth-D atoms summing to target, each as a tuple of labels."""
    depth = spec.resolve_depth(depth)
    atoms = list(atom_generators(spec, depth))
    _, search = _search(target, atoms)
    solutions = search.every()
    if len(solutions) > limit:
        logging.warning("Found %d factorizations of %s; keeping the first %d.", len(solutions), target, limit)
        solutions = solutions[:limit]
    factorizations = []
    for solution in solutions:
        ordered = search.ordered(solution)
        factorizations.append(tuple(label for label, count in ordered.items() for _ in range(count)))
    return sorted(factorizations, key=lambda f: (len(f), f))


def localization_primes(spec: PuiseuxMonoidSpec, depth: Optional[int] = None) -> list:
    """Primes dividing some generator denominator; the monoid lies in Z[1/p : p in this list]."""
    primes = set()
    for _, value in spec.generator_list(depth):
        primes.update(prime_factors(value.denominator))
    return sorted(primes)


def reachable(target: Scalar, spec: PuiseuxMonoidSpec, depth: Optional[int] = None) -> bool:
    """Cheap necessary condition for membership: the denominator uses only localization primes."""
    target = Fraction(target)
    return target >= 0 and in_localization(target, localization_primes(spec, depth))


@dataclass(frozen=True)
class ChainLink:
    index: int
    status: LinkStatus
    forward: Optional[MembershipCertificate] = None
    backward: Optional[MembershipCertificate] = None

    def as_dict(self) -> dict:
        report = {"index": self.index, "status": self.status.label}
        if self.forward is not None:
            report["witness"] = self.forward.as_dict()
        if self.backward is not None:
            report["reverse_witness"] = self.backward.as_dict()
        return report


@dataclass(frozen=True)
class ChainReport:
    chain: tuple
    links: tuple
    depth: int

    @property
    def all_proper(self) -> bool:
        return bool(self.links) and all(link.status is LinkStatus.PROPER for link in self.links)

    @property
    def stabilizes(self) -> bool:
        """True when no link of the probed chain is a proper ascent."""
        return not any(link.status is LinkStatus.PROPER for link in self.links)

    def as_dict(self) -> dict:
        return {
            "chain": [str(c) for c in self.chain],
            "depth": self.depth,
            "links": [link.as_dict() for link in self.links],
            "all_proper": self.all_proper,
            "stabilizes": self.stabilizes,
        }


def accp_chain_probe(
    spec: PuiseuxMonoidSpec,
    n_max: int,
    chain: Optional[Iterable[Scalar]] = None,
    depth: Optional[int] = None,
) -> ChainReport:
    """
    Probe the chain of principal ideals x_0 + M ⊆ x_1 + M ⊆ ... link by link.

    For M_{q,r} the default chain is x_n = 1/q^n, n = 0..n_max. Explicit monoids need a chain.
    A link is proper when x_n - x_{n+1} has a certificate and x_{n+1} - x_n does not.
    """
    depth = spec.resolve_depth(depth)
    if chain is None:
        if spec.kind is not MonoidKind.MQR:
            raise PreconditionError("accp.missing-chain", "Explicit monoids need a caller-supplied chain.")
        chain = [Fraction(1, spec.schedule.q**n) for n in range(n_max + 1)]
    chain = tuple(Fraction(c) for c in chain)[: n_max + 1]
    certified = [membership(c, spec, depth) is not None for c in chain]
    links = []
    for n in range(len(chain) - 1):
        if not (certified[n] and certified[n + 1]):
            logging.warning("Chain elements %s, %s are not certified at depth %d.", chain[n], chain[n + 1], depth)
            links.append(ChainLink(n, LinkStatus.UNVERIFIED))
            continue
        forward = divides(chain[n + 1], chain[n], spec, depth)
        backward = divides(chain[n], chain[n + 1], spec, depth)
        if forward is None:
            links.append(ChainLink(n, LinkStatus.NOT_ASCENDING, backward=backward))
        elif backward is not None:
            links.append(ChainLink(n, LinkStatus.STABLE, forward, backward))
        else:
            links.append(ChainLink(n, LinkStatus.PROPER, forward))
    return ChainReport(chain, tuple(links), depth)
