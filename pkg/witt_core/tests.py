# witt_core/tests.py
import pytest
from hypothesis import given, strategies as st

from core.exceptions import ContextMismatch, ResourceError, ValidationError
from witt_core.managers import universal_polys
from witt_core.models import LaurentPoly, PrimeContext, WittVector
from witt_core.utils import GhostOracle, ScalarWitt, WittArithmetic, build_universal_polys, ghost_oracle
from witt_core import verification

P2N3 = PrimeContext(2, 3)
P3N2 = PrimeContext(3, 2)


def laurent(p):
    coeffs = st.dictionaries(st.integers(-3, 3), st.integers(0, p - 1), max_size=3)
    return coeffs.map(lambda c: LaurentPoly(c, p))


def witt_vectors(ctx):
    return st.tuples(*[laurent(ctx.p) for _ in range(ctx.n)]).map(lambda coords: WittVector(ctx, coords))


# Laurent polynomials

def test_laurent_arithmetic():
    a = LaurentPoly({-1: 1, 2: 1}, 2)
    b = LaurentPoly({-1: 1}, 2)
    assert (a + b) == LaurentPoly({2: 1}, 2)
    assert (a * b) == LaurentPoly({-2: 1, 1: 1}, 2)
    assert a.valuation() == -1 and a.degree() == 2
    assert LaurentPoly.monomial(2, 3, 3) ** -1 == LaurentPoly({-3: 2}, 3)


def test_laurent_rejects_mixed_rings():
    with pytest.raises(ContextMismatch):
        LaurentPoly({0: 1}, 2) + LaurentPoly({0: 1}, 3)


def test_laurent_inverse_needs_monomial():
    with pytest.raises(ValidationError):
        LaurentPoly({0: 1, 1: 1}, 2) ** -1


@given(laurent(3))
def test_frobenius_is_pth_power(a):
    assert a.frobenius() == a ** 3


# contexts and scalars

def test_prime_context_validation():
    with pytest.raises(ValidationError):
        PrimeContext(6, 2)
    with pytest.raises(ValidationError):
        PrimeContext(2, 0)
    assert P2N3.modulus == 8
    assert P2N3.at_level(1) == PrimeContext(2, 1)


@pytest.mark.parametrize('ctx', [P2N3, P3N2, PrimeContext(5, 2)])
def test_scalar_round_trip(ctx):
    for value in range(ctx.modulus):
        assert ScalarWitt.integer_of(ScalarWitt.vector(ctx, value)) == value


def test_scalar_ring_is_integers_mod_pn():
    a, b = ScalarWitt.vector(P3N2, 4), ScalarWitt.vector(P3N2, 7)
    assert ScalarWitt.integer_of(WittArithmetic.add(a, b)) == 2
    assert ScalarWitt.integer_of(WittArithmetic.multiply(a, b)) == 1


# universal polynomials

def test_level_zero_polynomials():
    polys = universal_polys.get(2, 0)
    assert polys.term_counts() == {'S': 2, 'P': 1, 'F': 2}


def test_universal_polys_are_cached():
    assert build_universal_polys(3, 1)[1] is universal_polys.get(3, 1)


def test_universal_polys_level_limit():
    with pytest.raises(ResourceError):
        universal_polys.get(2, 99)
    with pytest.raises(ValidationError):
        build_universal_polys(2, -1)


# arithmetic against the ghost oracle

@given(witt_vectors(P2N3), witt_vectors(P2N3))
def test_addition_matches_oracle(a, b):
    assert WittArithmetic.add(a, b) == GhostOracle.checked('add', a, b)


@given(witt_vectors(P3N2), witt_vectors(P3N2))
def test_multiplication_matches_oracle(a, b):
    assert WittArithmetic.multiply(a, b) == GhostOracle.checked('mul', a, b)


@given(witt_vectors(P2N3))
def test_frobenius_matches_oracle(a):
    assert WittArithmetic.frobenius(a) == GhostOracle.checked('frobenius', a)


@given(witt_vectors(P3N2))
def test_negation(a):
    assert WittArithmetic.add(a, WittArithmetic.negate(a)).is_zero()


def test_teichmuller_is_multiplicative():
    a = LaurentPoly({1: 1, -2: 1}, 2)
    b = LaurentPoly({3: 1}, 2)
    product = WittArithmetic.multiply(WittArithmetic.teich(P2N3, a), WittArithmetic.teich(P2N3, b))
    assert product == WittArithmetic.teich(P2N3, a * b)


def test_ghost_components_of_teichmuller():
    t = WittArithmetic.teich(P2N3, LaurentPoly({1: 1}, 0))
    ghosts = ghost_oracle(t)
    assert ghosts == (LaurentPoly({1: 1}), LaurentPoly({2: 1}), LaurentPoly({4: 1}))


def test_ghost_components_need_lifts():
    with pytest.raises(ValidationError):
        GhostOracle.ghost_components(WittArithmetic.one(P2N3))


def test_operators_change_level():
    a = WittArithmetic.teich(P2N3, LaurentPoly({1: 1}, 2))
    assert WittArithmetic.verschiebung(a).ctx.n == 4
    assert WittArithmetic.restriction(a).ctx.n == 2
    assert WittArithmetic.frobenius(a) == WittArithmetic.teich(P2N3.at_level(2), LaurentPoly({2: 1}, 2))
    with pytest.raises(ValidationError):
        WittArithmetic.restriction(WittArithmetic.one(PrimeContext(2, 1)))


def test_teichmuller_sum():
    heads = [LaurentPoly({1: 1}, 2), LaurentPoly({-1: 1}, 2)]
    total = WittArithmetic.from_teichmuller_sum(PrimeContext(2, 2), heads)
    assert total == WittVector(PrimeContext(2, 2), tuple(heads))


def test_mixed_contexts_are_rejected():
    with pytest.raises(ContextMismatch):
        WittArithmetic.add(WittArithmetic.one(P2N3), WittArithmetic.one(P2N3.at_level(2)))


# sampled suite

@pytest.mark.parametrize('ctx', [PrimeContext(2, 1), PrimeContext(2, 2), P3N2])
def test_witt_suite(ctx):
    failed = [(c.name, c.witness) for c in verification.witt_suite(ctx, samples=8, seed=5) if not c.passed]
    assert not failed


@pytest.mark.parametrize('ctx', [PrimeContext(2, 1), PrimeContext(2, 2), P3N2])
def test_operator_identities(ctx):
    results = verification.check_operator_identities(ctx, samples=4, seed=11)
    names = [result.name.split(' (p=')[0] for result in results]
    assert names == ['FV = p', 'V(x·Fy) = Vx·y', 'VF = p', 'F[a] = [a^p]', 'RF = FR', 'RV = VR',
                     'sum V^i[a_i] = (a_0, ..., a_(n-1))']
    assert not [(r.name, r.witness) for r in results if not r.passed]


def test_frobenius_of_teichmuller_is_pth_power():
    a = LaurentPoly({-1: 1, 2: 1}, 2)
    lifted = WittArithmetic.teich(P2N3, a)
    assert WittArithmetic.frobenius(lifted) == WittArithmetic.teich(P2N3.at_level(2), a ** 2)
    assert a ** 2 == LaurentPoly({-2: 1, 4: 1}, 2)
