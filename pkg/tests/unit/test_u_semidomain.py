import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from sympy import Poly, Symbol

from puiseuxlab.constants import AtomVerdict, SearchBudget
from puiseuxlab.errors import LabDomainError, PreconditionError
from puiseuxlab.finite_field import FpPoly, is_irreducible_oracle
from puiseuxlab.monoid import PuiseuxMonoidSpec
from puiseuxlab.semidomain import (
    PolyExpr,
    arith,
    ascent_factorization,
    atom_test_bounded,
    clear_denominators,
    distinguished_atom_split,
    indecomposable,
    is_unit,
    kronecker_split,
    nonascent_image_check,
    nonascent_pair,
    split_search,
    structure,
    substitute_power,
    support_in_monoid,
)

x = Symbol("x")


def zpoly(expr):
    return Poly(expr, x, domain="ZZ")


@pytest.fixture(scope="module")
def m23():
    return PuiseuxMonoidSpec.mqr(2, 3)


class TestPolyExpr:
    def test_terms_merge_and_sort(self):
        f = PolyExpr(((2, 1), (Fraction(1, 2), 3), (2, -1), (0, 5)))
        assert f.terms == ((Fraction(0), Fraction(5)), (Fraction(1, 2), Fraction(3)))

    def test_finite_field_coefficients(self):
        f = PolyExpr.from_dict({1: Fraction(1, 2), 0: 4}, modulus=3)
        assert f.as_dict() == {Fraction(1): 2, Fraction(0): 1}
        assert f.domain == "F_3"

    def test_coefficient_outside_field(self):
        with pytest.raises(LabDomainError) as exc_info:
            PolyExpr.monomial(Fraction(1, 3), 1, modulus=3)
        assert exc_info.value.code == "polyexpr.coefficient-domain"

    def test_negative_exponent(self):
        with pytest.raises(LabDomainError):
            PolyExpr.monomial(1, -1)

    def test_str(self):
        f = PolyExpr.from_dict({Fraction(17, 72): 1, 0: 1, 2: Fraction(-3, 4)})
        assert str(f) == "-3/4*x^2 + x^(17/72) + 1"

    def test_arithmetic(self):
        f = PolyExpr.from_dict({Fraction(1, 2): 1, 0: 1}, modulus=2)
        assert f * f == PolyExpr.from_dict({1: 1, 0: 1}, modulus=2)
        assert arith(f, f, "add").is_zero()
        with pytest.raises(LabDomainError):
            arith(f, f, "sub")

    def test_mixed_domains(self):
        with pytest.raises(LabDomainError):
            PolyExpr.constant(1) + PolyExpr.constant(1, modulus=5)

    def test_divide(self):
        g = PolyExpr.from_dict({Fraction(1, 3): 1, 0: 2})
        h = PolyExpr.from_dict({1: 1, Fraction(1, 2): -1})
        quotient, remainder = (g * h).divide(g)
        assert quotient == h
        assert remainder.is_zero()

    def test_substitute_power(self):
        f = PolyExpr.from_dict({Fraction(1, 6): 1, Fraction(1, 2): 1}, modulus=2)
        assert f.substitute_power(6) == PolyExpr.from_dict({1: 1, 3: 1}, modulus=2)
        with pytest.raises(LabDomainError):
            f.substitute_power(0)

    def test_to_fppoly(self):
        f = PolyExpr.from_dict({2: 1, 1: 1, 0: 1}, modulus=2)
        assert f.to_fppoly() == FpPoly((1, 1, 1), 2)
        with pytest.raises(LabDomainError):
            PolyExpr.monomial(1, Fraction(1, 2), modulus=2).to_fppoly()


def test_structure():
    f = PolyExpr.from_dict({Fraction(1, 2): 1, 2: 3})
    assert structure(f).as_dict() == {
        "support": ["1/2", "2"],
        "order": "1/2",
        "degree": "2",
        "order_coefficient": "1",
        "leading_coefficient": "3",
    }


def test_structure_of_zero():
    with pytest.raises(LabDomainError):
        structure(PolyExpr())


def test_units():
    assert is_unit(PolyExpr.constant(3, modulus=5))
    assert not is_unit(PolyExpr.monomial(1, Fraction(1, 2), modulus=5))
    assert not is_unit(PolyExpr())


def test_clear_denominators():
    f = PolyExpr.from_dict({Fraction(17, 72): 1, 0: 1}, modulus=2)
    poly, denominator = clear_denominators(f)
    assert denominator == 72
    assert poly == FpPoly.from_terms({17: 1, 0: 1}, 2)


def test_support_in_monoid(m23):
    report = support_in_monoid(PolyExpr.from_dict({Fraction(1, 2): 1, Fraction(1, 5): 1}, modulus=2), m23)
    assert not report.certified
    assert report.as_dict()["exponents"] == {"1/5": None, "1/2": {"a1": 1, "b1": 1}}


class TestSplitSearch:
    def test_refinement_splits_cyclotomic(self, m23):
        f = PolyExpr.from_dict({2: 1, 1: 1, 0: 1}, modulus=2)
        result = split_search(f, m23)
        assert result.verdict is AtomVerdict.REDUCIBLE
        assert result.refinement == 1
        assert [str(part) for part in result.witness] == ["x + x^(1/2) + 1", "x + x^(1/2) + 1"]
        assert result.witness[0] * result.witness[1] == f

    def test_no_refinement_reports_atom_at_depth(self, m23):
        f = PolyExpr.from_dict({2: 1, 1: 1, 0: 1}, modulus=2)
        result = atom_test_bounded(f, m23, SearchBudget(refinements=0))
        assert result.verdict is AtomVerdict.ATOM
        assert result.as_dict()["verdict"] == "atom-at-depth"

    def test_unit(self, m23):
        assert split_search(PolyExpr.constant(1, modulus=3), m23).verdict is AtomVerdict.UNIT

    def test_atom_monomial(self, m23):
        f = PolyExpr.monomial(1, Fraction(17, 72), modulus=2)
        assert split_search(f, m23).verdict is AtomVerdict.ATOM

    def test_reducible_monomial(self, m23):
        result = split_search(PolyExpr.monomial(1, Fraction(1, 2), modulus=2), m23)
        assert result.verdict is AtomVerdict.REDUCIBLE
        assert [str(part) for part in result.witness] == ["x^(17/72)", "x^(19/72)"]

    def test_uncertified_support(self, caplog, m23):
        f = PolyExpr.from_dict({Fraction(1, 5): 1, 0: 1}, modulus=2)
        result = split_search(f, m23)
        assert result.verdict is AtomVerdict.UNKNOWN
        assert result.reason == "support not certified"
        assert "not certified" in caplog.text

    def test_grouping_budget(self, caplog):
        f = PolyExpr.from_dict({3: 1, 0: 1}, modulus=7)
        result = split_search(f, PuiseuxMonoidSpec.explicit([3]), SearchBudget(max_groupings=1))
        assert result.verdict is AtomVerdict.UNKNOWN
        assert result.reason == "grouping budget"
        assert "exhausted" in caplog.text

    def test_linear_factors_outside_monoid(self):
        f = PolyExpr.from_dict({3: 1, 0: 1}, modulus=7)
        result = split_search(f, PuiseuxMonoidSpec.explicit([3]))
        assert result.verdict is AtomVerdict.ATOM
        assert result.groupings == 6

    def test_rational_coefficients_rejected(self, m23):
        with pytest.raises(LabDomainError):
            split_search(PolyExpr.constant(1), m23)


class TestKronecker:
    def test_linear_factor(self):
        g, h = kronecker_split(zpoly(x**2 - 1))
        assert g * h == zpoly(x**2 - 1)

    def test_quadratic_factors(self):
        f = zpoly(x**4 + 4)
        g, h = kronecker_split(f)
        assert g * h == f
        assert sorted([g.degree(), h.degree()]) == [2, 2]

    @pytest.mark.parametrize("expr", [x**2 + 1, x**4 + 1, x**3 - 2, 2 * x + 6, x**4 + x + 1])
    def test_indecomposable(self, expr):
        assert kronecker_split(zpoly(expr)) is None

    def test_degree_limit(self):
        with pytest.raises(LabDomainError):
            kronecker_split(zpoly(x**5 + 1))


def test_indecomposable_without_monoid():
    assert indecomposable(PolyExpr.from_dict({2: 1, 0: 1}))
    assert not indecomposable(PolyExpr.from_dict({2: 1, 0: 1}, modulus=2))
    assert indecomposable(FpPoly((1, 1, 1), 2))


def test_indecomposable_with_monoid(m23):
    assert indecomposable(FpPoly((1, 1, 1), 2), m23) is False
    assert indecomposable(FpPoly((1, 1, 1), 2), m23, SearchBudget(refinements=0)) is True


def test_indecomposable_constant():
    with pytest.raises(LabDomainError):
        indecomposable(PolyExpr.constant(3))


class TestAscentFactorization:
    def test_rational_coefficients_rejected(self):
        with pytest.raises(LabDomainError) as exc_info:
            ascent_factorization(PolyExpr.from_dict({1: Fraction(1, 2), 0: 1}))
        assert exc_info.value.code == "polyexpr.not-integer-poly"

    def test_integers(self):
        f = PolyExpr.from_dict({4: 2, 0: -2})
        factorization = ascent_factorization(f)
        assert factorization.d == 2
        assert sorted(str(a) for a in factorization.atoms) == ["x + 1", "x - 1", "x^2 + 1"]
        assert factorization.expand() == f

    def test_negative_leading_coefficient(self):
        f = PolyExpr.from_dict({2: -3, 0: 3})
        factorization = ascent_factorization(f)
        assert factorization.d == -3
        assert factorization.expand() == f
        assert all(atom.leading_coefficient > 0 for atom in factorization.atoms)

    def test_finite_field(self):
        f = PolyExpr.from_dict({2: 2, 0: 2}, modulus=3)
        factorization = ascent_factorization(f)
        assert factorization.d == 2
        assert [str(a) for a in factorization.atoms] == ["x^2 + 1"]

    def test_as_dict(self):
        f = PolyExpr.from_dict({2: 1, 0: -1})
        assert ascent_factorization(f).as_dict() == {"f": "x^2 - 1", "d": "1", "atoms": ["x + 1", "x - 1"]}

    @pytest.mark.parametrize(
        "f",
        [PolyExpr.constant(4), PolyExpr.monomial(1, Fraction(1, 2))],
    )
    def test_rejected(self, f):
        with pytest.raises(LabDomainError):
            ascent_factorization(f)


class TestNonascent:
    @pytest.mark.parametrize(
        ("p", "d", "f_d"),
        [(2, 3, "x^2 + x + 1"), (5, 4, "x + 3"), (13, 12, "x + 11"), (7, 2, "x^2 + 3*x + 6")],
    )
    def test_pairs(self, p, d, f_d):
        pair = nonascent_pair(p)
        assert (pair.d, str(pair.f_d)) == (d, f_d)
        assert pair.spec.describe() == f"M_{{{p},{d}}}"

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    @pytest.mark.parametrize("n", [0, 1, 2])
    def test_images_irreducible(self, p, n):
        assert nonascent_image_check(nonascent_pair(p), n)

    def test_image(self):
        assert nonascent_pair(2).image(1) == FpPoly.from_terms({6: 1, 3: 1, 0: 1}, 2)
        assert is_irreducible_oracle(nonascent_pair(2).image(1))

    def test_distinguished_split(self):
        pair = nonascent_pair(2)
        a_j = PolyExpr.from_dict({2: 1, 1: 1, 0: 1}, modulus=2)
        split = distinguished_atom_split(a_j, pair, 1)
        assert split.exact
        assert split.certified
        assert str(split.quotient) == "x + x^(1/2) + 1"
        assert split.as_dict()["B"] == "x + x^(1/2) + 1"

    def test_distinguished_split_fails(self):
        pair = nonascent_pair(2)
        a_j = PolyExpr.from_dict({1: 1, 0: 1}, modulus=2)
        split = distinguished_atom_split(a_j, pair, 1)
        assert not split.exact
        assert not split.certified
        assert split.quotient is None

    def test_domain_mismatch(self):
        with pytest.raises(PreconditionError):
            distinguished_atom_split(PolyExpr.constant(1), nonascent_pair(2), 1)


@st.composite
def polyexprs(draw, modulus=None, nonzero=False, standard=False):
    if standard:
        exponent = st.integers(0, 12)
    else:
        exponent = st.builds(Fraction, st.integers(0, 12), st.sampled_from([1, 2, 3, 4, 6]))
    if modulus is None:
        coefficient = st.fractions(min_value=-9, max_value=9, max_denominator=5)
    else:
        coefficient = st.integers(0, modulus - 1)
    f = PolyExpr(tuple(draw(st.lists(st.tuples(exponent, coefficient), max_size=4))), modulus)
    if nonzero:
        assume(not f.is_zero())
    return f


@st.composite
def same_domain(draw, count, nonzero=False):
    modulus = draw(st.sampled_from([None, 2, 3, 5]))
    return [draw(polyexprs(modulus, nonzero)) for _ in range(count)]


prime_polyexprs = st.sampled_from([2, 3, 5]).flatmap(polyexprs)


class TestPolyExprProperties:
    @settings(max_examples=100, deadline=None)
    @given(same_domain(3))
    def test_ring_axioms(self, triple):
        f, g, h = triple
        assert (f + g) + h == f + (g + h)
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert f * g == g * f
        assert f - f == PolyExpr((), f.modulus)

    @settings(max_examples=100, deadline=None)
    @given(same_domain(2, nonzero=True))
    def test_order_and_degree_add(self, pair):
        f, g = pair
        product = arith(f, g, "mul")
        assert product.order == f.order + g.order
        assert product.degree == f.degree + g.degree

    @settings(max_examples=100, deadline=None)
    @given(same_domain(2, nonzero=True))
    def test_constant_and_monomial_products(self, pair):
        f, g = pair
        product = f * g
        if product.is_constant():
            assert f.is_constant() and g.is_constant()
        if product.is_monomial():
            assert f.is_monomial() and g.is_monomial()

    @settings(max_examples=100, deadline=None)
    @given(st.sampled_from([2, 3, 5]).flatmap(lambda p: polyexprs(p, nonzero=True, standard=True)), st.integers(1, 12))
    def test_clear_denominators_undoes_substitution(self, f, d):
        g = substitute_power(f, Fraction(1, d))
        standard, denominator = clear_denominators(g)
        assert d % denominator == 0
        assert substitute_power(PolyExpr.from_fppoly(standard), Fraction(1, denominator)) == g
        assert substitute_power(PolyExpr.from_fppoly(standard), Fraction(d, denominator)) == f

    @settings(max_examples=100, deadline=None)
    @given(prime_polyexprs)
    def test_frobenius(self, f):
        assert substitute_power(f, f.modulus) == f**f.modulus


@pytest.mark.parametrize("p", [2, 3])
def test_constant_and_monomial_products_exhaustive(p):
    exponents = [Fraction(0), Fraction(1, 2), Fraction(1)]
    elements = [PolyExpr(tuple(zip(exponents, coeffs)), p) for coeffs in itertools.product(range(p), repeat=3)]
    elements = [f for f in elements if not f.is_zero()]
    for f, g in itertools.product(elements, repeat=2):
        product = f * g
        if product.is_constant():
            assert f.is_constant() and g.is_constant()
        if product.is_monomial():
            assert f.is_monomial() and g.is_monomial()
