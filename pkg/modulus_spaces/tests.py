# modulus_spaces/tests.py
import pytest

from chain_linalg.models import WindowSpec
from core.exceptions import ValidationError, WindowTooSmall
from filtrations.utils import SupportSpaces
from modulus_spaces import verification
from modulus_spaces.managers import zero_generators
from modulus_spaces.models import ModulusDivisor
from modulus_spaces.utils import (
    ZERO, annihilated_by_pline, bn_zn_intersections, bn_zn_pole, classical_bn_zn, omega_bz_zero, p_div_decompose,
    pole_space, restricted_twist, twisted_bound, twisted_bz_spaces, zero_space,
)
from witt_core.models import PrimeContext

P2N1 = PrimeContext(2, 1)
P2N2 = PrimeContext(2, 2)
P3N1 = PrimeContext(3, 1)
P2N3 = PrimeContext(2, 3)


def window(q, low=-4, high=4):
    return WindowSpec(q, low, high)


def assert_passed(results):
    if not isinstance(results, list):
        results = [results]
    failed = [(r.name, r.lengths, r.witness) for r in results if not r.passed]
    assert not failed


def support(p, q, predicate, w):
    return SupportSpaces.space(PrimeContext(p, 1), w.with_degree(q), predicate)


# divisors

def test_divisor_rounding():
    D = ModulusDivisor.of({'P': 5, 'Q': 4})
    assert D.ceil_div(2) == ModulusDivisor.of({'P': 3, 'Q': 2})
    assert D.floor_div(4) == ModulusDivisor.of({'P': 1, 'Q': 1})
    assert D.floor_div(5) == ModulusDivisor.of({'P': 1})
    assert D.reduced() == ModulusDivisor.of({'P': 1, 'Q': 1})


def test_divisor_sums_and_scaling():
    D = ModulusDivisor.of({'P': 1}) + ModulusDivisor.of({'P': 2, 'Q': 1})
    assert D.multiplicity('P') == 3
    assert D.scaled(2).multiplicity('Q') == 2
    assert str(ModulusDivisor.zero()) == '0'


def test_divisor_rejects_non_positive_multiplicities():
    with pytest.raises(ValidationError):
        ModulusDivisor((('P', -1),))


def test_module_computations_need_a_divisor_at_the_origin():
    with pytest.raises(ValidationError):
        ModulusDivisor.of({'P': 2}).origin_multiplicity()
    assert ModulusDivisor.at_origin(3).origin_multiplicity() == 3


@pytest.mark.parametrize('p, E, ladder, prime_part, parts', [
    (2, {'P': 6, 'Q': 5}, (1,), {'Q': 5}, [{'P': 3}]),
    (2, {'P': 4}, (1,), {}, [{'P': 2}]),
    (3, {'P': 9}, (1, 2), {}, [{}, {'P': 1}]),
    (2, {'P': 12, 'Q': 8}, (1, 2), {}, [{}, {'P': 3, 'Q': 2}]),
])
def test_p_div_decompose(p, E, ladder, prime_part, parts):
    E = ModulusDivisor.of(E)
    decomposition = p_div_decompose(E, ladder, p)
    assert decomposition.prime_part == ModulusDivisor.of(prime_part)
    assert list(decomposition.parts) == [ModulusDivisor.of(part) for part in parts]
    assert decomposition.reconstruct() == E


def test_p_div_decompose_rejects_bad_ladders():
    with pytest.raises(ValidationError):
        p_div_decompose(ModulusDivisor.at_origin(4), (2, 1), 2)
    with pytest.raises(ValidationError):
        p_div_decompose(ModulusDivisor.at_origin(4), (), 2)


def test_restricted_twist_splits_off_the_top_part():
    assert restricted_twist(2, 1, 4) == (ModulusDivisor.zero(), ModulusDivisor.at_origin(2))
    assert restricted_twist(2, 1, 6) == (ModulusDivisor.at_origin(6), ModulusDivisor.zero())


# pole and zero spaces

@pytest.mark.parametrize('q, r, bound', [(1, 3, -2), (1, 4, -3), (0, 4, -4), (0, 3, -2), (1, 0, 1), (0, 0, 0)])
def test_pole_space_at_level_one(q, r, bound):
    w = window(q, -6, 3)
    assert pole_space(P2N1, q, r, w).equals(SupportSpaces.at_least(P2N1, w, bound))


@pytest.mark.parametrize('q, r, bound', [(1, 4, 5), (1, 3, 3), (0, 4, 4), (0, 3, 3), (1, 6, 7)])
def test_zero_space_at_level_one(q, r, bound):
    w = window(q, -2, 9)
    assert zero_space(P2N1, q, r, w).equals(SupportSpaces.at_least(P2N1, w, bound))


@pytest.mark.parametrize('ctx', [P2N1, P2N2, P3N1])
@pytest.mark.parametrize('q', [0, 1])
def test_zero_space_without_zeros_is_regular(ctx, q):
    w = window(q, -2, 3)
    assert zero_space(ctx, q, 0, w).equals(SupportSpaces.regular(ctx, w))


def test_zero_generators_include_differentials():
    family = zero_generators(P2N2, 2, 1, window(1, 0, 3))
    assert len(family) > 0
    assert any(recipe.startswith('d(') for recipe in family.recipes())


@pytest.mark.parametrize('p, q, D, E, m, side, bound', [
    (2, 1, 3, 0, 0, 'pole', -2),
    (2, 1, 0, 4, 0, 'pole', -3),
    (2, 0, 0, 4, 0, 'pole', -4),
    (2, 1, 3, 0, 1, 'pole', -1),
    (2, 1, 3, 0, 0, ZERO, 3),
    (2, 1, 0, 4, 0, ZERO, 5),
    (3, 0, 5, 1, 1, ZERO, 3),
])
def test_twisted_bound(p, q, D, E, m, side, bound):
    assert twisted_bound(p, q, D, E, m, side) == bound


# B_n and Z_n

def test_classical_bn_zn_at_level_one():
    w = window(1, -6, 6)
    pair = classical_bn_zn(2, 1, 1, w)
    assert pair.Z.equals(support(2, 1, lambda u: u >= 1, w))
    assert pair.B.equals(support(2, 1, lambda u: u >= 1 and u % 2 == 1, w))
    pair = classical_bn_zn(2, 1, 0, w)
    assert pair.Z.equals(support(2, 0, lambda u: u >= 0 and u % 2 == 0, w))
    assert pair.B.length == 0


def test_classical_b2_keeps_exponents_of_small_valuation():
    w = window(1, -8, 8)
    pair = classical_bn_zn(2, 2, 1, w)
    assert pair.B.equals(support(2, 1, lambda u: u >= 1 and u % 4 != 0, w))


def test_bn_zn_at_index_zero():
    w = window(1, -4, 4)
    pair = bn_zn_pole(2, 0, 1, 3, w)
    assert pair.B.length == 0
    assert pair.Z.equals(SupportSpaces.at_least(P2N1, w, -2))


def test_twisted_recursion_without_twist_is_classical():
    w = window(1, -6, 6)
    recursion = twisted_bz_spaces(2, 1, 0, 0, 1, w)
    classical = classical_bn_zn(2, 1, 1, w)
    assert recursion.B.equals(classical.B)
    assert recursion.Z.equals(classical.Z)


def test_twisted_recursion_with_pole():
    w = window(1, -4, 4)
    pair = twisted_bz_spaces(2, 1, 3, 0, 1, w)
    assert pair.Z.equals(SupportSpaces.at_least(P2N1, w, -2))
    assert pair.B.equals(support(2, 1, lambda u: u >= -1 and u % 2 == 1, w))


# zero-side quotients

@pytest.mark.parametrize('q', [0, 1])
def test_omega_quotients_at_index_zero(q):
    w = window(q, -2, 8)
    omega_b, omega_z = omega_bz_zero(2, 0, q, 3, w)
    assert omega_b.module.equals(zero_space(P2N1, q, 3, w))
    assert omega_z.length == 0


def test_pline_membership_of_zeros():
    w = window(1, -2, 8)
    assert annihilated_by_pline(2, 1, 1, 4, w).equals(SupportSpaces.at_least(P2N1, w, 3))


# verification procedures

@pytest.mark.parametrize('ctx', [P2N1, P2N2])
@pytest.mark.parametrize('q', [0, 1])
@pytest.mark.parametrize('D', [0, 3, 4])
def test_bnzn_descriptions(ctx, q, D):
    assert_passed(verification.verify_bnzn(ctx, q, D, window(q, -8, 4)))


def test_frobenius_cut_exceeds_pole_image_at_p_divisible_origin():
    w = window(0, -8, 4)
    pair = bn_zn_pole(2, 1, 0, 2, w)
    cut = bn_zn_intersections(2, 1, 0, 2, w)
    assert pair.Z.issubset(cut.Z)
    assert not cut.Z.issubset(pair.Z)
    check = verification.verify_bnzn(P2N1, 0, 2, w)[0]
    assert check.name.startswith('Z_1 ⊆')
    assert check.passed


@pytest.mark.parametrize('q, D', [(1, 2), (0, 3)])
def test_frobenius_cut_matches_pole_image(q, D):
    w = window(q, -8, 4)
    assert bn_zn_pole(2, 1, q, D, w).Z.equals(bn_zn_intersections(2, 1, q, D, w).Z)


@pytest.mark.parametrize('q', [0, 1])
@pytest.mark.parametrize('D', [0, 2, 3, 4, 8])
def test_restriction_of_pole_modules(q, D):
    assert_passed(verification.verify_rhwm(P2N1, q, D, window(q, -8, 3)))


@pytest.mark.parametrize('ctx, D', [(P2N2, 3), (P2N2, 0), (P2N1, 4), (P3N1, 3)])
@pytest.mark.parametrize('q', [0, 1])
def test_structure_sequence(ctx, q, D):
    assert_passed(verification.verify_strHWM(ctx, q, D, window(q, -8, 4)))


def test_structure_sequence_needs_room_for_poles():
    with pytest.raises(WindowTooSmall):
        verification.verify_strHWM(P2N2, 0, 5, window(0, -2, 2))


@pytest.mark.parametrize('r_w', [1, 2])
@pytest.mark.parametrize('q', [0, 1])
def test_long_exact_sequence(r_w, q):
    assert_passed(verification.verify_long_mod_seq(P2N1, q, 3, r_w, window(q, -4, 3)))


def test_long_exact_sequence_rejects_zero_step():
    with pytest.raises(ValidationError):
        verification.verify_long_mod_seq(P2N1, 0, 3, 0, window(0))


@pytest.mark.parametrize('ctx', [P2N1, P2N2])
@pytest.mark.parametrize('D', [0, 3, 4])
@pytest.mark.parametrize('q', [0, 1])
def test_zero_side(ctx, q, D):
    assert_passed(verification.verify_zero_side(ctx, q, D, window(q, -1, 3)))


@pytest.mark.parametrize('q', [0, 1])
@pytest.mark.parametrize('r', [0, 2, 3])
def test_sandwich(q, r):
    assert_passed(verification.check_sandwich(P2N2, q, r, window(q, -5, 4)))


@pytest.mark.parametrize('q', [0, 1])
@pytest.mark.parametrize('r', [1, 4])
def test_zero_space_stability(q, r):
    assert_passed(verification.check_zero_stability(P2N1, q, r, window(q, -1, 4)))


@pytest.mark.parametrize('D', [0, 2, 3])
def test_pole_modules_at_length_three(D):
    w = window(1, -4, 4)
    results = verification.verify_bnzn(P2N3, 1, D, w) + verification.verify_strHWM(P2N3, 1, D, w)
    results.append(verification.verify_rhwm(P2N3, 1, D, w))
    assert_passed(results)


@pytest.mark.parametrize('D', [0, 2, 3])
def test_zero_side_at_length_three(D):
    assert_passed(verification.verify_zero_side(P2N3, 1, D, window(1, -4, 4)))
