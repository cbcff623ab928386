# drw_forms/tests.py
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chain_linalg.models import WindowSpec
from core.exceptions import ContextMismatch, DegreeError, NotInImage, ValidationError
from core.utils import WeightCalculator
from drw_forms.managers import raw_coordinates
from drw_forms.models import SupportProfile, make_form
from drw_forms.utils import FormArithmetic, FormConstructors, FormOperators, FormPrinter, WeightValues
from drw_forms import verification
from witt_core.models import LaurentPoly, PrimeContext, WittVector
from witt_core.utils import WittArithmetic

P2N1 = PrimeContext(2, 1)
P2N2 = PrimeContext(2, 2)
P3N2 = PrimeContext(3, 2)

F, V, R, d = FormOperators.frobenius, FormOperators.verschiebung, FormOperators.restriction, FormOperators.d


def forms(ctx, q, low=-3, high=3):
    keys = WeightCalculator.keys_between(ctx.p, ctx.n, low, high)
    coeffs = st.dictionaries(st.sampled_from(keys), st.integers(0, ctx.modulus - 1), max_size=4)
    return coeffs.map(lambda c: make_form(ctx, q, c))


# normal forms

def test_coefficients_are_reduced_per_depth():
    x = make_form(P2N2, 0, {(0, 1): 5, (1, 1): 3})
    assert x.coeffs == {(0, 1): 1, (1, 1): 1}


@pytest.mark.parametrize('key', [(2, 1), (1, 2), (-1, 1)])
def test_unnormalized_keys_are_rejected(key):
    with pytest.raises(ValidationError):
        make_form(P2N2, 0, {key: 1})


def test_weight_values():
    x = make_form(P2N2, 0, {(0, -1): 1, (1, 3): 1})
    assert WeightValues.of(x) == {Fraction(-1): 1, Fraction(3, 2): 2}
    w = make_form(P3N2, 1, {(1, 2): 1})
    assert WeightValues.of(w) == {Fraction(2, 3): 2}
    assert WeightValues.to_form(P3N2, 1, WeightValues.of(w)) == w


def test_support_profile():
    x = make_form(P2N2, 1, {(0, -2): 1, (1, 1): 1})
    profile = SupportProfile.of(x)
    assert profile.min_weight == -2 and profile.max_weight == Fraction(1, 2)
    assert profile.pole_order == 2
    assert not profile.is_regular_support(1)
    assert SupportProfile.of(make_form(P2N2, 0, {(0, 0): 1})).is_regular_support(0)


# arithmetic

def test_teichmuller_product():
    a = FormConstructors.teich_form(P3N2, 1, 2)
    b = FormConstructors.teich_form(P3N2, 1, -5)
    assert FormArithmetic.mul(a, b) == FormConstructors.teich_form(P3N2, 1, -3)


def test_function_times_dlog():
    a = FormConstructors.teich_form(P2N2, 1, 3)
    assert FormArithmetic.mul(a, FormConstructors.dlog_t(P2N2)) == make_form(P2N2, 1, {(0, 3): 1})


def test_product_of_one_forms_is_rejected():
    with pytest.raises(DegreeError):
        FormArithmetic.mul(FormConstructors.dlog_t(P2N2), FormConstructors.dlog_t(P2N2))


def test_sum_needs_same_degree_and_context():
    with pytest.raises(ContextMismatch):
        FormArithmetic.add(FormConstructors.constant(P2N2, 1), FormConstructors.dlog_t(P2N2))
    with pytest.raises(ContextMismatch):
        FormArithmetic.add(FormConstructors.constant(P2N2, 1), FormConstructors.constant(P2N1, 1))


@given(forms(P2N2, 0), forms(P2N2, 0), forms(P2N2, 1))
def test_module_structure(a, b, w):
    assert FormArithmetic.mul(FormArithmetic.add(a, b), w) == \
        FormArithmetic.add(FormArithmetic.mul(a, w), FormArithmetic.mul(b, w))
    assert FormArithmetic.mul(a, b) == FormArithmetic.mul(b, a)


# operators

def test_dlog_of_unit_scalar():
    assert FormConstructors.dlog_monomial(P2N2, 1, 3) == make_form(P2N2, 1, {(0, 0): 3})
    with pytest.raises(ValidationError):
        FormConstructors.dlog_monomial(P3N2, 6, 1)


def test_d_of_verschiebung():
    x = V(FormConstructors.teich_form(P2N1, 1, 1))
    assert d(x) == make_form(P2N2, 1, {(1, 1): 1})


def test_d_of_constant_vanishes():
    assert d(FormConstructors.constant(P3N2, 4)).is_zero()


def test_d_of_one_form_is_rejected():
    with pytest.raises(DegreeError):
        d(FormConstructors.dlog_t(P2N2))


def test_frobenius_needs_two_levels():
    with pytest.raises(ValidationError):
        F(FormConstructors.dlog_t(P2N1))


def test_residue():
    assert FormOperators.residue(make_form(P3N2, 1, {(0, 0): 4, (0, 1): 1})) == 4
    with pytest.raises(DegreeError):
        FormOperators.residue(FormConstructors.constant(P3N2, 1))


def test_cartier_outside_frobenius_image():
    with pytest.raises(NotInImage):
        FormOperators.cartier(FormConstructors.teich_form(P2N2, 1, 1))


def test_inverse_cartier_ambiguity():
    w = make_form(P2N2, 1, {(0, 1): 1})
    representative, ambiguity = FormOperators.inv_cartier(w, WindowSpec(1, -1, 1))
    assert FormOperators.cartier(representative) == w
    assert all(g.q == 1 and not g.is_zero() for g in ambiguity)
    assert len(ambiguity) == 4


@given(forms(P2N2, 0))
def test_frobenius_of_d_verschiebung(x):
    assert F(d(V(x))) == d(x)


@given(forms(PrimeContext(3, 3), 1))
def test_cartier_inverts_frobenius(w):
    assert FormOperators.cartier(F(w)) == R(w)


def test_dv_top_generators():
    generators = FormConstructors.dv_top_generators(P2N2, -1, 1)
    assert generators == [make_form(P2N2, 1, coeffs) for coeffs in
                          ({(0, -1): 2}, {(1, -1): 1}, {(1, 1): 1}, {(0, 1): 2})]


def test_printer():
    x = make_form(P2N2, 0, {(0, -1): 3, (1, 1): 1})
    assert FormPrinter.render(x) == '3*T(1,-1) + V^1(1*T(1,1))'
    assert FormPrinter.render(make_form(P2N2, 1)) == '0*dlogt'


# raw Witt coordinates

def test_decompose_teichmuller_plus_verschiebung():
    x = FormArithmetic.add(FormConstructors.teich_form(P2N2, 1, -1),
                           V(FormConstructors.teich_form(P2N1, 1, 1)))
    vector = raw_coordinates.decompose(x)
    assert vector == WittVector(P2N2, (LaurentPoly({-1: 1}, 2), LaurentPoly({1: 1}, 2)))
    assert raw_coordinates.coordinate_valuations(x) == [-1, 1]


@given(forms(P3N2, 0))
def test_coordinates_round_trip(x):
    assert raw_coordinates.recompose(raw_coordinates.decompose(x)) == x


def test_decompose_rejects_one_forms():
    with pytest.raises(DegreeError):
        raw_coordinates.decompose(FormConstructors.dlog_t(P2N2))


# normal-form arithmetic against Witt arithmetic on raw coordinates

decompose = raw_coordinates.decompose


@pytest.mark.parametrize('ctx', [P2N2, P3N2])
@given(data=st.data())
def test_sum_and_product_match_witt_arithmetic(ctx, data):
    x = data.draw(forms(ctx, 0, -2, 2))
    y = data.draw(forms(ctx, 0, -2, 2))
    assert decompose(FormArithmetic.add(x, y)) == WittArithmetic.add(decompose(x), decompose(y))
    assert decompose(FormArithmetic.mul0(x, y)) == WittArithmetic.multiply(decompose(x), decompose(y))


@pytest.mark.parametrize('ctx', [P2N2, P3N2])
@given(data=st.data())
def test_operators_match_witt_operators(ctx, data):
    x = data.draw(forms(ctx, 0))
    assert decompose(F(x)) == WittArithmetic.frobenius(decompose(x))
    assert decompose(R(x)) == WittArithmetic.restriction(decompose(x))
    assert decompose(V(x)) == WittArithmetic.verschiebung(decompose(x))


def test_verschiebung_times_teichmuller():
    # V([t])·[t] = V([t]·F[t]) = V([t]^3)
    product = FormArithmetic.mul0(V(FormConstructors.teich_form(P2N1, 1, 1)), FormConstructors.teich_form(P2N2, 1, 1))
    assert product == make_form(P2N2, 0, {(1, 3): 1})
    teich = WittArithmetic.teich
    assert decompose(product) == WittArithmetic.verschiebung(teich(P2N1, LaurentPoly({3: 1}, 2)))


def test_product_of_verschiebungs_vanishes_at_length_two():
    x = V(FormConstructors.teich_form(P2N1, 1, 1))
    assert FormArithmetic.mul0(x, x).is_zero()
    assert WittArithmetic.multiply(decompose(x), decompose(x)).is_zero()


def test_teichmuller_times_d_verschiebung():
    # [t]·dV([t]) = dV([t]^3) - V([t]^3 dlog t) and 3·V([t]^3 dlog t) = 2·dV([t]^3) = 0 at n = 2
    w = FormArithmetic.mul(FormConstructors.teich_form(P2N2, 1, 1), d(V(FormConstructors.teich_form(P2N1, 1, 1))))
    assert w == make_form(P2N2, 1, {(1, 3): 1})
    assert w == d(V(FormConstructors.teich_form(P2N1, 1, 3)))


# sampled relations

@pytest.mark.parametrize('ctx', [P2N1, P2N2, P3N2])
def test_relation_suite(ctx):
    failed = [(c.name, c.witness) for c in verification.check_relations(ctx, samples=10, seed=2) if not c.passed]
    assert not failed
