# duality_engine/tests.py
import pytest

from chain_linalg.models import WindowSpec
from core.exceptions import ContextMismatch, DegreeError, ValidationError, WindowTooSmall
from drw_forms.models import make_form
from drw_forms.utils import FormConstructors
from duality_engine import verification
from duality_engine.models import AnnihilatorSide, AnnihilatorSpec, PairingVerdict
from duality_engine.utils import (
    POLE, ZERO, annihilator_space, graded_quotients, log_complex_homology, pair, pairing_report,
)
from filtrations.utils import SupportSpaces
from modulus_spaces.utils import pole_window_space, zero_space
from witt_core.models import PrimeContext

P2N1 = PrimeContext(2, 1)
P2N2 = PrimeContext(2, 2)
P3N1 = PrimeContext(3, 1)
P2N3 = PrimeContext(2, 3)


def window(q, low=-5, high=5):
    return WindowSpec(q, low, high)


def assert_passed(results):
    if not isinstance(results, list):
        results = [results]
    failed = [(r.name, r.lengths, r.witness) for r in results if not r.passed]
    assert not failed


# residue pairing

@pytest.mark.parametrize('ctx', [P2N1, P2N2, P3N1])
@pytest.mark.parametrize('r', [1, 3])
def test_pairing_normalisation(ctx, r):
    function = FormConstructors.teich_form(ctx, 1, r)
    form = make_form(ctx, 1, {(0, -r): 1})
    assert pair(function, form) == 1
    assert pair(form, function) == 1


def test_regular_forms_pair_to_zero():
    function = make_form(P2N2, 0, {(0, 0): 1, (0, 2): 3, (1, 1): 1})
    form = make_form(P2N2, 1, {(0, 1): 1, (1, 3): 1})
    assert pair(function, form) == 0


def test_pairing_rejects_equal_degrees():
    with pytest.raises(DegreeError):
        pair(FormConstructors.constant(P2N1, 1), FormConstructors.constant(P2N1, 1))


def test_pairing_rejects_mixed_levels():
    with pytest.raises(ContextMismatch):
        pair(FormConstructors.constant(P2N1, 1), FormConstructors.dlog_t(P2N2))


# annihilators

@pytest.mark.parametrize('side', list(AnnihilatorSide))
@pytest.mark.parametrize('q', [0, 1])
def test_annihilator_without_modulus_is_regular(side, q):
    w = window(q, -3, 3)
    result = annihilator_space(AnnihilatorSpec(side, 0, q, P2N1, w))
    assert result.equals(SupportSpaces.regular(P2N1, w))


def test_annihilator_of_zeros_is_pole_space():
    w = window(1, -5, 3)
    result = annihilator_space(AnnihilatorSpec('pole-of-zero', 3, 1, P2N1, w))
    assert result.equals(pole_window_space(P2N1, 1, 3, w))


def test_annihilator_of_poles_is_zero_space():
    w = window(1, -3, 6)
    result = annihilator_space(AnnihilatorSpec(AnnihilatorSide.ZERO_OF_POLE, 3, 1, P2N1, w))
    assert result.equals(zero_space(P2N1, 1, 3, w))


def test_annihilator_side_parse():
    assert AnnihilatorSide.parse('zero-of-pole') is AnnihilatorSide.ZERO_OF_POLE
    with pytest.raises(ValidationError):
        AnnihilatorSide.parse('both')


# perfectness

@pytest.mark.parametrize('ctx, length', [(P2N1, 3), (P2N2, 6)])
def test_graded_pairing_is_perfect(ctx, length):
    left, right = graded_quotients(ctx, 1, 3, window(1, -6, 6))
    report = pairing_report(left, right)
    assert report.verdict is PairingVerdict.PERFECT
    assert (report.left_length, report.right_length) == (length, length)
    assert report.to_dict()['verdict'] == 'perfect'


def test_graded_pairing_without_modulus_is_trivial():
    left, right = graded_quotients(P2N2, 1, 0, window(1))
    report = pairing_report(left, right)
    assert report.is_perfect
    assert report.left_length == report.right_length == 0


def test_graded_pairing_needs_room_for_poles():
    with pytest.raises(WindowTooSmall):
        graded_quotients(P2N1, 1, 4, window(1, -2, 2))


@pytest.mark.parametrize('ctx', [P2N1, P2N2, P3N1])
@pytest.mark.parametrize('q', [0, 1])
@pytest.mark.parametrize('r', [0, 2, 3, 4])
def test_local_duality(ctx, q, r):
    results, report = verification.verify_local_duality(ctx, q, r, window(q, -6, 6))
    assert_passed(results)
    assert report.is_perfect


def test_multiplication_containment():
    assert_passed(verification.check_multiplication_containment(P2N2, 1, 3, window(1, -4, 4)))


# Cartier duality

@pytest.mark.parametrize('q, length', [(0, 3), (1, 2)])
def test_cartier_duality_at_index_zero(q, length):
    results, reports = verification.verify_cartier_duality(2, 0, q, 3, window(q, -5, 5))
    assert_passed(results)
    assert len(reports) == 1
    assert reports[0].left_length == reports[0].right_length == length


@pytest.mark.parametrize('n', [1, 2])
@pytest.mark.parametrize('q', [0, 1])
def test_cartier_duality(n, q):
    results, reports = verification.verify_cartier_duality(2, n, q, 3, window(q, -6, 6))
    assert_passed(results)
    assert len(reports) == (2 if q == 1 else 1)


def test_cartier_duality_in_odd_characteristic():
    results, _ = verification.verify_cartier_duality(3, 1, 1, 4, window(1, -6, 6))
    assert_passed(results)


# compatibilities

@pytest.mark.parametrize('q', [0, 1])
def test_balancedness(q):
    assert_passed(verification.check_balancedness(P2N2, q, window(q, -3, 3), samples=8, seed=3))


def test_residue_after_cartier():
    assert_passed(verification.check_residue_cartier(P2N1, window(1, -3, 3), samples=8, seed=1))


# fixed points of C

@pytest.mark.parametrize('ctx', [P2N1, P2N2, P3N1])
def test_constants_are_the_fixed_functions(ctx):
    homology = log_complex_homology(POLE, ctx, 0, 0, window(0, 0, 4))
    assert homology.kernel_length == ctx.n


@pytest.mark.parametrize('ctx', [P2N1, P2N2])
@pytest.mark.parametrize('q, r', [(0, 0), (0, 2), (1, 0), (1, 1), (1, 3)])
def test_fixed_points(ctx, q, r):
    assert_passed(verification.check_fixed_points(ctx, q, r, window(q, -4, 4)))


def test_fixed_point_report_has_both_sides():
    homologies = verification.fixed_point_report(P2N1, 1, 2, window(1, -3, 3))
    assert [h.sign for h in homologies] == [POLE, ZERO]
    assert 'H0' in homologies[1].to_dict()


def test_fixed_points_need_weight_zero():
    with pytest.raises(ValidationError):
        log_complex_homology(POLE, P2N1, 0, 0, window(0, 1, 4))


def test_unknown_fixed_point_side():
    with pytest.raises(ValidationError):
        log_complex_homology('both', P2N1, 0, 0, window(0))


@pytest.mark.parametrize('r', [0, 2, 3])
def test_local_duality_at_length_three(r):
    checks, report = verification.verify_local_duality(P2N3, 1, r, window(1, -4, 4))
    assert_passed(checks)
    assert report.left_length == report.right_length == 3 * r


@pytest.mark.parametrize('r', [2, 3])
def test_cartier_duality_at_length_three(r):
    checks, _ = verification.verify_cartier_duality(2, 3, 1, r, window(1, -4, 4))
    assert_passed(checks)
