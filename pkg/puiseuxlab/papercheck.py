"""
The acceptance driver: every desk-scale verification of the package, grouped in suites.

Each check returns a verdict and a JSON-ready payload. Checks run concurrently and the reports
come back sorted by check id; given the same parameters and seed, two runs agree on everything
except the wall-time fields.
"""
import logging
import math
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Optional, Union

from sympy import primerange

from puiseuxlab.arith import RatFunc, in_localization
from puiseuxlab.constants import (
    DEFAULT_ORACLE_CONFIG,
    DEFAULT_PROBE_BUDGET,
    DEFAULT_SEARCH_BUDGET,
    AtomVerdict,
    CandidateVerdict,
    ExitCode,
    OracleConfig,
    ProbeBudget,
    SearchBudget,
    Suite,
    Verdict,
)
from puiseuxlab.errors import LabDomainError, PuiseuxLabError
from puiseuxlab.finite_field import (
    FpElem,
    FpPoly,
    binomial,
    binomial_family_check,
    binomial_irreducible,
    factorize,
    is_irreducible_oracle,
    primitive_roots,
    trinomial,
    trinomial_parameter,
)
from puiseuxlab.monoid import (
    GeneratorSchedule,
    PuiseuxMonoidSpec,
    accp_chain_probe,
    divides,
    is_atom_bounded,
    membership,
)
from puiseuxlab.parsing import parse_expression, parse_ry
from puiseuxlab.semidomain import (
    PolyExpr,
    ascent_factorization,
    atom_test_bounded,
    distinguished_atom_split,
    kronecker_split,
    nonascent_pair,
    support_in_monoid,
)
from puiseuxlab.subring import (
    MID_TOWER,
    NONASCENT_TOWER,
    SubringPoly,
    almost_atomic_witness,
    claim1_constraints,
    claim2_polynomials,
    final_contradiction,
    infinite_descent_demo,
    is_atomic_element,
    is_unit,
    membership_subring,
    not_almost_atomic_witness,
    quasi_atomic_witness,
    refute_quasi_atomic_candidate,
)
from puiseuxlab.utils import load_data_file, prune_empty_values

MAX_LISTED_FAILURES = 10


@dataclass(frozen=True)
class PapercheckParams:
    """Parameters shared by every suite; the defaults reproduce the full acceptance run."""

    pairs: tuple = ((2, 3), (3, 2), (5, 4), (7, 2))
    n: int = 8
    atom_pairs: tuple = ((2, 3), (3, 2))
    atom_n: int = 3
    depth: int = 6
    pmax: int = 31
    tmax: int = 12
    family: tuple = ((5, 1), (5, 2), (13, 1), (13, 2), (17, 1))
    trinomial_primes: tuple = (3, 7, 11, 19, 23)
    kmax: int = 4
    finite_field_samples: int = 500
    integer_samples: int = 200
    subring_samples: int = 200
    atomic_samples: int = 50
    split_samples: int = 50
    image_n: int = 4
    seed: int = 0
    workers: Optional[int] = None
    search_budget: SearchBudget = DEFAULT_SEARCH_BUDGET
    oracle_config: OracleConfig = DEFAULT_ORACLE_CONFIG
    probe_budget: ProbeBudget = DEFAULT_PROBE_BUDGET

    def with_mqr(self, q: Optional[int] = None, r: Optional[int] = None, n: Optional[int] = None) -> "PapercheckParams":
        """Narrow the M_{q,r} checks to one pair and/or one index bound."""
        params = self
        if q is not None or r is not None:
            if q is None or r is None:
                raise LabDomainError("papercheck.half-pair", "--q and --r must be given together.")
            params = replace(params, pairs=((q, r),), atom_pairs=((q, r),))
        if n is not None:
            params = replace(params, n=n, atom_n=min(n, params.atom_n))
        return params

    def as_dict(self) -> dict:
        return {
            "pairs": [list(pair) for pair in self.pairs],
            "n": self.n,
            "atom_pairs": [list(pair) for pair in self.atom_pairs],
            "atom_n": self.atom_n,
            "depth": self.depth,
            "pmax": self.pmax,
            "tmax": self.tmax,
            "family": [list(pair) for pair in self.family],
            "trinomial_primes": list(self.trinomial_primes),
            "kmax": self.kmax,
            "finite_field_samples": self.finite_field_samples,
            "integer_samples": self.integer_samples,
            "subring_samples": self.subring_samples,
            "atomic_samples": self.atomic_samples,
            "split_samples": self.split_samples,
            "image_n": self.image_n,
            "seed": self.seed,
        }


DEFAULT_PARAMS = PapercheckParams()


@dataclass(frozen=True)
class CheckReport:
    check_id: str
    anchor: str
    parameters: dict
    verdict: Verdict
    payload: dict
    budget: dict
    wall_time: float = 0.0

    def as_dict(self, include_time: bool = True) -> dict:
        report = {
            "check_id": self.check_id,
            "anchor": self.anchor,
            "parameters": self.parameters,
            "verdict": self.verdict.label,
            "budget": self.budget,
            "payload": self.payload,
        }
        if include_time:
            report["wall_time"] = round(self.wall_time, 3)
        return report


@dataclass
class _Tally:
    """Running count of instances checked, with the failing and undecided ones."""

    checked: int = 0
    failures: list = field(default_factory=list)
    unknown: list = field(default_factory=list)

    def record(self, ok: Optional[bool], instance) -> None:
        self.checked += 1
        if ok is None:
            self.unknown.append(instance)
        elif not ok:
            self.failures.append(instance)

    @property
    def verdict(self) -> Verdict:
        if self.failures:
            return Verdict.FAIL
        if self.unknown:
            return Verdict.UNKNOWN
        return Verdict.PASS

    def payload(self, **extra) -> dict:
        report = {"checked": self.checked, "failed": len(self.failures), "unknown": len(self.unknown)}
        if self.failures:
            report["failures"] = self.failures[:MAX_LISTED_FAILURES]
        if self.unknown:
            report["unknown_instances"] = self.unknown[:MAX_LISTED_FAILURES]
        report.update(extra)
        return report

    def result(self, **extra) -> tuple:
        return self.verdict, self.payload(**extra)


@dataclass(frozen=True)
class Check:
    check_id: str
    suite: Suite
    anchor: str
    run: Callable
    parameters: tuple = ()
    budgets: tuple = ()


# prop-mqr


def _check_schedule(params: PapercheckParams, rng: random.Random) -> tuple:
    tally = _Tally()
    schedules = {}
    for q, r in params.pairs:
        schedule = GeneratorSchedule(q, r)
        ells = [schedule.ell(k) for k in range(params.n + 1)]
        schedules[f"{q},{r}"] = ells
        for k in range(1, params.n + 1):
            step = ells[k] - ells[k - 1]
            tally.record(step > 0 and r**step > 2 * q ** (k + 1), {"q": q, "r": r, "n": k})
    return tally.result(ells=schedules)


def _check_interleaving(params: PapercheckParams, rng: random.Random) -> tuple:
    tally = _Tally()
    for q, r in params.pairs:
        schedule = GeneratorSchedule(q, r)
        for k in range(1, params.n + 1):
            a_k, b_k = schedule.generators(k)
            _, b_next = schedule.generators(k + 1)
            tally.record(1 > b_k > a_k > b_next, {"q": q, "r": r, "n": k})
    return tally.result()


def _check_sum_identity(params: PapercheckParams, rng: random.Random) -> tuple:
    tally = _Tally()
    for q, r in params.pairs:
        schedule = GeneratorSchedule(q, r)
        for k in range(1, params.n + 1):
            a_k, b_k = schedule.generators(k)
            tally.record(a_k + b_k == Fraction(1, q**k), {"q": q, "r": r, "n": k})
    return tally.result()


def _check_localization(params: PapercheckParams, rng: random.Random) -> tuple:
    tally = _Tally()
    for q, r in params.pairs:
        schedule = GeneratorSchedule(q, r)
        for k in range(1, params.n + 1):
            for label, value in zip("ab", schedule.generators(k)):
                tally.record(in_localization(value, schedule.primes()), {"q": q, "r": r, "generator": f"{label}{k}"})
    return tally.result()


def _check_reciprocals(params: PapercheckParams, rng: random.Random) -> tuple:
    tally = _Tally()
    certificates = {}
    for q, r in params.pairs:
        spec = PuiseuxMonoidSpec.mqr(q, r, depth=params.n)
        for k in range(1, params.n + 1):
            certificate = membership(Fraction(1, q**k), spec, depth=k)
            tally.record(certificate is not None and certificate.verify(), {"q": q, "r": r, "n": k})
            if certificate is not None and k <= 2:
                certificates[f"{q},{r}: 1/{q**k}"] = certificate.as_dict()
    return tally.result(certificates=certificates)


def _check_atoms(params: PapercheckParams, rng: random.Random) -> tuple:
    tally = _Tally()
    for q, r in params.atom_pairs:
        spec = PuiseuxMonoidSpec.mqr(q, r, depth=params.depth)
        for k in range(1, params.atom_n + 1):
            for depth in range(k, params.depth + 1):
                for label in (f"a{k}", f"b{k}"):
                    check = is_atom_bounded(label, spec, depth)
                    tally.record(check.is_atom, {"q": q, "r": r, "generator": label, "depth": depth})
    return tally.result()


def _check_nondivision(params: PapercheckParams, rng: random.Random) -> tuple:
    tally = _Tally()
    for q, r in params.atom_pairs:
        spec = PuiseuxMonoidSpec.mqr(q, r, depth=params.depth)
        schedule = spec.schedule
        for k in range(1, params.atom_n + 1):
            a_k, b_k = schedule.generators(k)
            tally.record(divides(b_k, a_k, spec, params.depth) is None, {"q": q, "r": r, "n": k})
    return tally.result()


def _check_accp(params: PapercheckParams, rng: random.Random) -> tuple:
    tally = _Tally()
    chains = {}
    for q, r in params.atom_pairs:
        spec = PuiseuxMonoidSpec.mqr(q, r, depth=params.depth)
        report = accp_chain_probe(spec, params.depth)
        chains[f"{q},{r}"] = {"all_proper": report.all_proper, "stabilizes": report.stabilizes}
        tally.record(report.all_proper, {"q": q, "r": r})
    return tally.result(chains=chains)


# binomials and trinomials


def _check_binomial_criterion(params: PapercheckParams, rng: random.Random) -> tuple:
    tally = _Tally()
    agreements = 0
    for p in primerange(2, params.pmax + 1):
        p = int(p)
        for a in range(1, p):
            element = FpElem(a, p)
            for t in range(2, params.tmax + 1):
                criterion = binomial_irreducible(t, element)
                oracle = is_irreducible_oracle(binomial(t, element), params.oracle_config)
                tally.record(criterion == oracle, {"p": p, "a": a, "t": t, "criterion": criterion, "oracle": oracle})
                agreements += criterion == oracle
    return tally.result(agreements=agreements)


def _check_binomial_family(params: PapercheckParams, rng: random.Random) -> tuple:
    tally = _Tally()
    instances = []
    for p, n in params.family:
        for a in primitive_roots(p):
            outcome = binomial_family_check(p, n, a, params.oracle_config)
            instances.append(outcome)
            tally.record(outcome["criterion"] and outcome["oracle"], outcome)
    return tally.result(instances=len(instances))


def _check_trinomials(params: PapercheckParams, rng: random.Random) -> tuple:
    tally = _Tally()
    parameters = {}
    for p in params.trinomial_primes:
        a = trinomial_parameter(p)
        parameters[str(p)] = a.value
        for k in range(1, params.kmax + 1):
            f = trinomial(p, k)
            tally.record(is_irreducible_oracle(f, params.oracle_config), {"p": p, "k": k, "f": str(f)})
    return tally.result(parameters=parameters)


# ascent


def _random_fp_expr(rng: random.Random, p: int, max_degree: int) -> PolyExpr:
    degree = rng.randint(1, max_degree)
    coeffs = [rng.randrange(p) for _ in range(degree)] + [rng.randint(1, p - 1)]
    return PolyExpr.from_fppoly(FpPoly(tuple(coeffs), p))


def _random_integer_expr(rng: random.Random, max_degree: int, bound: int) -> PolyExpr:
    degree = rng.randint(1, max_degree)
    coeffs = {k: rng.randint(-bound, bound) for k in range(degree)}
    coeffs[degree] = rng.choice([c for c in range(-bound, bound + 1) if c])
    return PolyExpr.from_dict(coeffs)


def _check_ascent_finite_field(params: PapercheckParams, rng: random.Random) -> tuple:
    tally = _Tally()
    for index in range(params.finite_field_samples):
        p = 2 if index % 2 == 0 else 3
        f = _random_fp_expr(rng, p, 8)
        result = ascent_factorization(f)
        reassembles = result.expand() == f
        irreducible = all(is_irreducible_oracle(atom.to_fppoly(), params.oracle_config) for atom in result.atoms)
        oracle_atoms = sorted(str(PolyExpr.from_fppoly(atom)) for atom in factorize(f.to_fppoly()).atoms())
        matches = sorted(str(atom) for atom in result.atoms) == oracle_atoms
        tally.record(reassembles and irreducible and matches, {"p": p, "f": str(f)})
    return tally.result()


def _check_ascent_integers(params: PapercheckParams, rng: random.Random) -> tuple:
    tally = _Tally()
    for _ in range(params.integer_samples):
        f = _random_integer_expr(rng, 4, 10)
        result = ascent_factorization(f)
        poly = f.to_integer_poly()
        content = math.gcd(*(int(c) for c in poly.coeffs()))
        atom_contents = math.prod(math.gcd(*(int(c) for c in atom.to_integer_poly().coeffs())) for atom in result.atoms)
        indecomposable = all(kronecker_split(atom.to_integer_poly()) is None for atom in result.atoms)
        _, sympy_factors = poly.factor_list()
        count = sum(m for g, m in sympy_factors if g.degree() > 0)
        ok = (
            result.expand() == f
            and indecomposable
            and abs(result.d) == content * atom_contents
            and count == len(result.atoms)
        )
        tally.record(ok, {"f": str(f), "d": str(result.d), "atoms": [str(a) for a in result.atoms]})
    return tally.result()


# subring


def _random_rational(rng: random.Random, bound: int = 6) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def _random_member(rng: random.Random, scalars: Iterable = ()) -> tuple:
    """A random element of Z + Zx + x^2 K[x] and its order coefficient as generated."""
    scalars = list(scalars)
    terms = {}
    for k in range(rng.randint(0, 2), rng.randint(3, 5)):
        if k < 2:
            c = RatFunc.constant(rng.randint(-6, 6))
        elif scalars and rng.random() < 0.5:
            c = rng.choice(scalars) * _random_rational(rng)
        else:
            c = RatFunc.constant(_random_rational(rng))
        if not c.is_zero():
            terms[k] = c
    if not terms:
        terms[2] = RatFunc.constant(Fraction(1, 2))
    f = SubringPoly.from_dict(terms)
    return f, terms[min(terms)]


def _subring_corpus(rng: random.Random, size: int, scalars: Iterable = ()) -> list:
    half = Fraction(1, 2)
    corpus = [
        (SubringPoly.monomial(half, 2), RatFunc.constant(half)),
        (SubringPoly.monomial(1, 1), RatFunc.constant(1)),
    ]
    while len(corpus) < size:
        corpus.append(_random_member(rng, scalars=scalars))
    return corpus


QUASI_SCALARS = (
    RatFunc.variable("s"),
    RatFunc.variable("t"),
    RatFunc.variable("s") / RatFunc.variable("t"),
    RatFunc.variable("s") + 1,
)


def _check_subring_criterion(params: PapercheckParams, rng: random.Random) -> tuple:
    tally = _Tally()
    spot = {}
    for index, (f, order_coefficient) in enumerate(_subring_corpus(rng, params.subring_samples, QUASI_SCALARS)):
        verdict = is_atomic_element(f, NONASCENT_TOWER)
        tally.record(verdict == order_coefficient.is_integer(), {"f": str(f)})
        if index < 2:
            spot[str(f)] = verdict
    return tally.result(spot_checks=spot)


def _check_almost_witness(params: PapercheckParams, rng: random.Random) -> tuple:
    tally = _Tally()
    for f, _ in _subring_corpus(rng, params.subring_samples):
        s = almost_atomic_witness(f, MID_TOWER)
        tally.record(is_atomic_element(f.scale(s), MID_TOWER), {"f": str(f), "s": s})
    return tally.result()


def _check_quasi_witness(params: PapercheckParams, rng: random.Random) -> tuple:
    tally = _Tally()
    for f, _ in _subring_corpus(rng, params.subring_samples, QUASI_SCALARS):
        g = quasi_atomic_witness(f, NONASCENT_TOWER)
        product = g * f
        ok = membership_subring(g, NONASCENT_TOWER) and is_atomic_element(product, NONASCENT_TOWER)
        tally.record(ok, {"f": str(f), "g": str(g)})
    return tally.result()


def _check_not_almost(params: PapercheckParams, rng: random.Random) -> tuple:
    tally = _Tally()
    kappa = RatFunc.variable("s")
    example = None
    produced = 0
    while produced < params.atomic_samples:
        f, order_coefficient = _random_member(rng, scalars=QUASI_SCALARS)
        if not order_coefficient.is_integer():
            continue
        produced += 1
        record = not_almost_atomic_witness(NONASCENT_TOWER, kappa, f)
        tally.record(record.violates, {"f": str(f)})
        example = example or record.as_dict()
    return tally.result(example=example)


def _check_descent(params: PapercheckParams, rng: random.Random) -> tuple:
    tally = _Tally()
    q, a, depth = Fraction(1, 2), 2, 10
    steps = infinite_descent_demo(q, a, depth, MID_TOWER)
    for step in steps:
        tally.record(step.member and not step.unit and not step.atomic, step.as_dict())
    for upper, lower in zip(steps, steps[1:]):
        nested = (upper.cofactor - lower.cofactor.scale(a)).is_zero()
        tally.record(nested and not is_unit(SubringPoly.constant(a)), upper.k)
    return tally.result(length=len(steps), last=steps[-1].as_dict())


def _claim2_parameters(rng: random.Random, count: int = 40) -> list:
    parameters = []
    for _ in range(count):
        z_s = rng.choice([c for c in range(-5, 6) if c])
        s_index = rng.randint(0, 3)
        d = s_index + rng.randint(1, 6)
        parameters.append((z_s, [rng.randint(-9, 9) for _ in range(d - s_index)], s_index, d))
    return parameters


def _check_claim2_degrees(params: PapercheckParams, rng: random.Random) -> tuple:
    tally = _Tally()
    for z_s, Z_seq, s_index, d in _claim2_parameters(rng):
        for k, Q_k in claim2_polynomials(z_s, Z_seq, s_index, d):
            tally.record(Q_k.degree() == k - s_index, {"z_s": z_s, "Z": Z_seq, "s": s_index, "d": d, "k": k})
    return tally.result()


def _check_final_contradiction(params: PapercheckParams, rng: random.Random) -> tuple:
    tally = _Tally()
    for z_s, Z_seq, s_index, d in _claim2_parameters(rng, 10):
        for _, Q_l in claim2_polynomials(z_s, Z_seq, s_index, d):
            c = _random_rational(rng)
            outcome = final_contradiction(z_s, Q_l, c)
            tally.record(outcome.nonzero, outcome.as_dict())
    return tally.result()


def _check_claim1_corpus(params: PapercheckParams, rng: random.Random) -> tuple:
    tally = _Tally()
    flagged = 0
    for entry in load_data_file("claim_constraints.json"):
        T = [parse_expression(text, "subring") for text in entry["T"]]
        gamma = parse_expression(entry["gamma"], "ratfunc")
        rows = claim1_constraints(T, entry["e"], gamma)
        violated = any(row.violations for row in rows)
        flagged += violated
        tally.record(violated == entry["expect_violation"], {"id": entry["id"], "violated": violated})
    return tally.result(flagged=flagged)


def _check_refuter_corpus(params: PapercheckParams, rng: random.Random) -> tuple:
    tally = _Tally()
    reasons = {}
    for entry in load_data_file("nonascent_candidates.json"):
        F = parse_ry(entry["F"])
        claimed = [parse_ry(text) for text in entry["factors"]]
        refutation = refute_quasi_atomic_candidate(F, claimed, NONASCENT_TOWER, params.probe_budget)
        reasons[entry["id"]] = refutation.reason
        if refutation.verdict is CandidateVerdict.UNKNOWN:
            tally.record(None, entry["id"])
        else:
            tally.record(refutation.verdict is CandidateVerdict.INVALID, entry["id"])
    return tally.result(reasons=reasons)


# nonascent


def _check_nonascent_images(params: PapercheckParams, rng: random.Random) -> tuple:
    tally = _Tally()
    pair = nonascent_pair(2)
    for n in range(params.image_n + 1):
        image = pair.image(n)
        tally.record(is_irreducible_oracle(image, params.oracle_config), {"n": n, "degree": image.degree})
    return tally.result(pair=pair.as_dict())


def _check_nonascent_other_primes(params: PapercheckParams, rng: random.Random) -> tuple:
    tally = _Tally()
    pairs = {}
    for p, n_max in ((3, 3), (5, 2), (7, 3), (13, 1)):
        pair = nonascent_pair(p)
        pairs[str(p)] = pair.as_dict()
        for n in range(n_max + 1):
            image = pair.image(n)
            tally.record(is_irreducible_oracle(image, params.oracle_config), {"p": p, "n": n, "degree": image.degree})
    return tally.result(pairs=pairs)


def _check_frobenius_witness(params: PapercheckParams, rng: random.Random) -> tuple:
    pair = nonascent_pair(2)
    f = PolyExpr.from_fppoly(pair.f_d)
    result = atom_test_bounded(f, pair.spec, params.search_budget)
    if result.verdict is AtomVerdict.UNKNOWN:
        return Verdict.UNKNOWN, result.as_dict()
    expected = PolyExpr.from_dict({0: 1, Fraction(1, 2): 1, 1: 1}, 2)
    ok = result.verdict is AtomVerdict.REDUCIBLE and all(factor == expected for factor in result.witness)
    support = support_in_monoid(expected, pair.spec, params.search_budget.depth)
    payload = {"split": result.as_dict(), "support": support.as_dict()}
    return (Verdict.PASS if ok and support.certified else Verdict.FAIL), payload


def _random_depth3_exponent(rng: random.Random, values: list) -> Fraction:
    return sum(rng.sample(values, rng.randint(0, 2)), Fraction(0))


def _check_distinguished_split(params: PapercheckParams, rng: random.Random) -> tuple:
    tally = _Tally()
    pair = nonascent_pair(2)
    values = [value for _, value in pair.spec.generator_list(3)]
    example = None
    for _ in range(params.split_samples):
        n = rng.randint(1, 3)
        B = PolyExpr.from_dict({_random_depth3_exponent(rng, values): 1 for _ in range(rng.randint(1, 3))}, 2)
        divisor = PolyExpr.from_fppoly(pair.f_d).substitute_power(Fraction(1, 2**n))
        a_j = divisor * B
        split = distinguished_atom_split(a_j, pair, n, depth=3)
        tally.record(split.certified and split.quotient == B, {"n": n, "B": str(B)})
        example = example or split.as_dict()
    return tally.result(example=example)


CHECKS = (
    Check(
        "prop-mqr.schedule",
        Suite.PROP_MQR,
        "l strictly increasing with r^(l_n - l_(n-1)) > 2 q^(n+1)",
        _check_schedule,
        ("pairs", "n"),
    ),
    Check("prop-mqr.interleaving", Suite.PROP_MQR, "1 > b_n > a_n > b_(n+1)", _check_interleaving, ("pairs", "n")),
    Check("prop-mqr.sum-identity", Suite.PROP_MQR, "a_n + b_n = 1/q^n", _check_sum_identity, ("pairs", "n")),
    Check(
        "prop-mqr.localization", Suite.PROP_MQR, "M_{q,r} lies in Z[1/q, 1/r]", _check_localization, ("pairs", "n")
    ),
    Check("prop-mqr.reciprocals", Suite.PROP_MQR, "N_0[1/q] lies in M_{q,r}", _check_reciprocals, ("pairs", "n")),
    Check(
        "prop-mqr.atoms",
        Suite.PROP_MQR,
        "a_n and b_n are atoms",
        _check_atoms,
        ("atom_pairs", "atom_n", "depth"),
    ),
    Check(
        "prop-mqr.nondivision",
        Suite.PROP_MQR,
        "b_n does not divide a_n in M",
        _check_nondivision,
        ("atom_pairs", "atom_n", "depth"),
    ),
    Check(
        "prop-mqr.accp",
        Suite.PROP_MQR,
        "1/q^n + M is a strictly ascending chain",
        _check_accp,
        ("atom_pairs", "depth"),
    ),
    Check(
        "binomials.criterion",
        Suite.BINOMIALS,
        "x^t - a irreducible iff the order conditions hold",
        _check_binomial_criterion,
        ("pmax", "tmax"),
        ("oracle",),
    ),
    Check(
        "binomials.primitive-family",
        Suite.BINOMIALS,
        "x^((p-1)^n) - a irreducible for primitive a and p = 1 mod 4",
        _check_binomial_family,
        ("family",),
        ("oracle",),
    ),
    Check(
        "trinomials.oracle",
        Suite.TRINOMIALS,
        "x^(2^k) - 2a x^(2^(k-1)) - 1 irreducible for p = 3 mod 4",
        _check_trinomials,
        ("trinomial_primes", "kmax"),
        ("oracle",),
    ),
    Check(
        "ascent.finite-field",
        Suite.ASCENT,
        "F_p[x]: constant times indecomposables",
        _check_ascent_finite_field,
        ("finite_field_samples", "seed"),
        ("oracle",),
    ),
    Check(
        "ascent.integers",
        Suite.ASCENT,
        "Z[x]: content times indecomposables",
        _check_ascent_integers,
        ("integer_samples", "seed"),
    ),
    Check(
        "subring.criterion",
        Suite.SUBRING,
        "atomic iff the order coefficient lies in S",
        _check_subring_criterion,
        ("subring_samples", "seed"),
    ),
    Check(
        "subring.almost-witness",
        Suite.SUBRING,
        "s f is atomic for s = d(order coefficient)",
        _check_almost_witness,
        ("subring_samples", "seed"),
    ),
    Check(
        "subring.quasi-witness",
        Suite.SUBRING,
        "k^(-1) x^2 f is atomic",
        _check_quasi_witness,
        ("subring_samples", "seed"),
    ),
    Check(
        "subring.not-almost",
        Suite.SUBRING,
        "f (kappa x^2) fails the criterion for kappa outside Q",
        _check_not_almost,
        ("atomic_samples", "seed"),
    ),
    Check("subring.descent", Suite.SUBRING, "q x^2 = a^k (q/a^k) x^2 never ends in atoms", _check_descent),
    Check(
        "subring.claim1-corpus",
        Suite.SUBRING,
        "p_i membership forces integrality of (t/gamma) c_i and (s/gamma) c_i",
        _check_claim1_corpus,
    ),
    Check("subring.claim2-degrees", Suite.SUBRING, "deg Q_k = k - s", _check_claim2_degrees, ("seed",)),
    Check(
        "subring.final-contradiction",
        Suite.SUBRING,
        "z_s x Q_l(x) - c does not vanish at s/t",
        _check_final_contradiction,
        ("seed",),
    ),
    Check(
        "subring.refuter",
        Suite.SUBRING,
        "no F makes F (s x^2 y + t x^2) a product of irreducibles",
        _check_refuter_corpus,
        (),
        ("probe",),
    ),
    Check(
        "nonascent.images",
        Suite.NONASCENT,
        "f_d(x^(3^n)) = x^(2 3^n) + x^(3^n) + 1 irreducible over F_2",
        _check_nonascent_images,
        ("image_n",),
        ("oracle",),
    ),
    Check(
        "nonascent.other-primes",
        Suite.NONASCENT,
        "f_d(x^(d^n)) irreducible over F_p",
        _check_nonascent_other_primes,
        (),
        ("oracle",),
    ),
    Check(
        "nonascent.frobenius-witness",
        Suite.NONASCENT,
        "x^2 + x + 1 = (x + x^(1/2) + 1)^2 in F_2[M_{2,3}]",
        _check_frobenius_witness,
        (),
        ("search",),
    ),
    Check(
        "nonascent.distinguished-split",
        Suite.NONASCENT,
        "a_j = f_d(x^(1/p^n)) B(x) with supp B in M",
        _check_distinguished_split,
        ("split_samples", "seed"),
    ),
)


def checks_for(suite: Union[Suite, str]) -> list:
    """The checks a suite runs, sorted by id."""
    try:
        suite = Suite(suite)
    except ValueError:
        raise LabDomainError(
            "papercheck.unknown-suite", f"Unknown suite {suite!r}.", data={"suites": [s.label for s in Suite]}
        ) from None
    selected = [check for check in CHECKS if suite is Suite.ALL or check.suite is suite]
    return sorted(selected, key=lambda check: check.check_id)


def _budgets(check: Check, params: PapercheckParams) -> dict:
    budgets = {
        "search": params.search_budget,
        "oracle": params.oracle_config,
        "probe": params.probe_budget,
    }
    return {name: budgets[name].as_dict() for name in check.budgets}


def run_check(check: Check, params: PapercheckParams = DEFAULT_PARAMS) -> CheckReport:
    """Run one check with its own seeded random source; an exception fails the check."""
    everything = params.as_dict()
    parameters = {name: everything[name] for name in check.parameters}
    rng = random.Random(f"{params.seed}:{check.check_id}")
    start = time.perf_counter()
    try:
        verdict, payload = check.run(params, rng)
    except PuiseuxLabError as exc:
        logging.error("Check %s raised %s", check.check_id, exc)
        verdict, payload = Verdict.FAIL, {"error": exc.detail}
    wall_time = time.perf_counter() - start
    logging.info("%s: %s in %.2fs", check.check_id, verdict.label, wall_time)
    payload = prune_empty_values(payload)
    return CheckReport(check.check_id, check.anchor, parameters, verdict, payload, _budgets(check, params), wall_time)


def run_papercheck(suite: Union[Suite, str] = Suite.ALL, params: PapercheckParams = DEFAULT_PARAMS) -> list:
    """
    Run every check of a suite concurrently.

    Args:
        suite: prop-mqr, binomials, trinomials, ascent, subring, nonascent or all
        params: sizes, seed and budgets shared by the checks

    Returns:
        The CheckReports sorted by check id.
    """
    selected = checks_for(suite)
    with ThreadPoolExecutor(max_workers=params.workers) as pool:
        reports = list(pool.map(lambda check: run_check(check, params), selected))
    return sorted(reports, key=lambda report: report.check_id)


def summarize(reports: list) -> dict:
    counts = {verdict.label: 0 for verdict in Verdict}
    for report in reports:
        counts[report.verdict.label] += 1
    return counts


def exit_code(reports: list) -> ExitCode:
    """Unknown-at-budget verdicts do not fail a run."""
    return ExitCode.FAIL if any(report.verdict is Verdict.FAIL for report in reports) else ExitCode.PASS
