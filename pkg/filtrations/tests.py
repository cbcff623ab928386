# filtrations/tests.py
from fractions import Fraction

import pytest

from chain_linalg.models import FormSpace, WindowSpec
from core.exceptions import DegreeError, SearchExhausted, ValidationError, WindowTooSmall
from drw_forms.models import make_form
from drw_forms.utils import FormConstructors, FormOperators
from filtrations.models import FilKind, FiltrationId
from filtrations.utils import (
    ConductorSearch, FiltrationSpaces, SupportSpaces, closed_form_bound, conductor, fil_log_membership,
    generators, rfil_expected_bound, window_space,
)
from filtrations import verification
from witt_core.models import PrimeContext

P2N1 = PrimeContext(2, 1)
P2N2 = PrimeContext(2, 2)
P3N2 = PrimeContext(3, 2)
P2N3 = PrimeContext(2, 3)


def window(q, low=-4, high=2):
    return WindowSpec(q, low, high)


def assert_passed(results):
    if not isinstance(results, list):
        results = [results]
    failed = [(r.name, r.lengths, r.witness) for r in results if not r.passed]
    assert not failed


# fil^log membership

def test_teichmuller_pole_membership_depends_on_level():
    x = FormConstructors.teich_form(P2N2, 1, -1)
    assert not fil_log_membership(x, 1)
    assert fil_log_membership(x, 2)


def test_verschiebung_of_pole_is_in_fil_log_2():
    x = FormOperators.verschiebung(FormConstructors.teich_form(P2N1, 1, -2))
    assert fil_log_membership(x, 2)


def test_regular_elements_are_in_fil_log_0():
    x = make_form(P2N2, 0, {(0, 0): 3, (0, 2): 1, (1, 1): 1})
    assert fil_log_membership(x, 0)


def test_fil_log_membership_rejects_one_forms():
    with pytest.raises(DegreeError):
        fil_log_membership(FormConstructors.dlog_t(P2N2), 1)


# generator families

@pytest.mark.parametrize('q', [0, 1])
@pytest.mark.parametrize('ctx', [P2N1, P2N2, P3N2])
def test_filp_zero_is_regular(ctx, q):
    w = window(q)
    space = window_space(FiltrationId(FilKind.FILP, 0, q, ctx), w)
    assert space.equals(SupportSpaces.regular(ctx, w))


@pytest.mark.parametrize('q', [0, 1])
@pytest.mark.parametrize('ctx', [P2N1, P2N2, P3N2])
def test_filp_one_is_log(ctx, q):
    w = window(q)
    space = window_space(FiltrationId(FilKind.FILP, 1, q, ctx), w)
    assert space.equals(SupportSpaces.log(ctx, w))


def test_filp_three_at_level_one_has_poles_up_to_two():
    w = window(1, -5, 3)
    family = generators(FiltrationId(FilKind.FILP, 3, 1, P2N1), w)
    assert min(min(x.weights()) for x in family.forms()) == -2
    space = window_space(FiltrationId(FilKind.FILP, 3, 1, P2N1), w)
    assert space.equals(SupportSpaces.at_least(P2N1, w, -2))


def test_family_records_recipes():
    family = generators(FiltrationId(FilKind.FILP, 2, 0, P2N2), window(0))
    assert len(family) > 0
    assert all(recipe for recipe in family.recipes())


def test_window_must_cover_pole_range():
    with pytest.raises(WindowTooSmall):
        generators(FiltrationId(FilKind.FILP, 5, 0, P2N2), window(0, -2, 2))


def test_filtration_id_rejects_negative_level():
    with pytest.raises(ValidationError):
        FiltrationId(FilKind.LOG, -1, 0, P2N2)


def test_fil_kind_parse():
    assert FilKind.parse('logPrime') is FilKind.LOG_PRIME
    with pytest.raises(ValidationError):
        FilKind.parse('kato')


def test_kato_matsuda_layer_sits_between_log_layers():
    w = window(0, -6, 2)
    fil = FiltrationSpaces.layer(P2N2, FilKind.FIL, 4, w)
    assert FiltrationSpaces.layer(P2N2, FilKind.LOG, 3, w).issubset(fil)
    assert fil.issubset(FiltrationSpaces.layer(P2N2, FilKind.LOG, 4, w))


# conductor

def test_conductor_of_regular_form_is_zero():
    x = make_form(P2N2, 0, {(0, 0): 1, (1, 3): 1})
    assert conductor(x) == 0


def test_conductor_of_dlog_t_is_one():
    assert conductor(FormConstructors.dlog_t(P2N2)) == 1


def test_conductor_of_verschiebung_pole():
    x = FormOperators.verschiebung(FormConstructors.teich_form(P2N1, 1, -2))
    assert conductor(x) == 2


def test_conductor_of_zero_is_zero():
    assert conductor(make_form(P3N2, 1)) == 0


def test_conductor_search_raises_when_bounds_miss(monkeypatch):
    monkeypatch.setattr(ConductorSearch, 'bounds', staticmethod(lambda x: (0, 0)))
    with pytest.raises(SearchExhausted):
        conductor(FormConstructors.teich_form(P2N1, 1, -2))


@pytest.mark.parametrize('r', [1, 2, 3, 4])
def test_conductor_at_level_one_matches_pole_order(r):
    # [t^-r] dlog t generates the top of Fil^p_{r+1} at n = 1
    x = make_form(P2N1, 1, {(0, -r): 1})
    assert conductor(x) == r + 1


# closed forms

@pytest.mark.parametrize('p, n, q, r, bound', [
    (2, 1, 0, 3, -1),
    (2, 1, 1, 3, -1),
    (2, 2, 0, 3, 0),
    (2, 2, 0, 8, -2),
    (2, 2, 1, 8, -1),
    (3, 1, 0, 6, -1),
])
def test_rfil_expected_bound(p, n, q, r, bound):
    assert rfil_expected_bound(p, n, q, r) == bound


def test_closed_form_bound():
    assert closed_form_bound(2, 0, 4) == -4
    assert closed_form_bound(2, 0, 3) == -2
    assert closed_form_bound(3, 1, 3) == -2
    assert closed_form_bound(2, 0, 0) == 0


# verification procedures

@pytest.mark.parametrize('ctx', [P2N1, P2N2])
def test_filp_base_layers(ctx):
    assert_passed(verification.check_filp_base(ctx, window(0)))


@pytest.mark.parametrize('q', [0, 1])
def test_monotonicity(q):
    assert_passed(verification.check_monotonicity(P2N2, q, 4, window(q, -5, 2)))


@pytest.mark.parametrize('q', [0, 1])
@pytest.mark.parametrize('r', [1, 2, 3])
def test_pline_identity(q, r):
    assert_passed(verification.check_filp_fvr(P2N2, q, r, window(q, -7, 2)))


def test_pline_identity_needs_two_levels():
    with pytest.raises(ValidationError):
        verification.check_filp_fvr(P2N1, 0, 1, window(0))


@pytest.mark.parametrize('q', [0, 1])
@pytest.mark.parametrize('r', [2, 3])
def test_filp_operator_stability(q, r):
    assert_passed(verification.check_filp_stability(P2N1, q, r, window(q, -4, 2)))


@pytest.mark.parametrize('kind', [FilKind.LOG, FilKind.LOG_PRIME, FilKind.FIL])
@pytest.mark.parametrize('q', [0, 1])
@pytest.mark.parametrize('r', [1, 2, 3])
def test_layer_operator_rules(kind, q, r):
    assert_passed(verification.check_fvr_stability(P2N1, kind, q, r, window(q, -5, 2)))


@pytest.mark.parametrize('kind', [FilKind.LOG, FilKind.LOG_PRIME, FilKind.FIL])
def test_layer_pline_rule_is_an_equality(kind):
    results = verification.check_fvr_stability(P2N1, kind, 0, 2, window(0, -5, 2))
    pline = [result.name for result in results if result.name.startswith('p̲')]
    assert pline == [f"p̲ {kind.value}_2 (q=0) = p {kind.value}_4"]
    assert_passed(results)


def test_layer_operator_rules_reject_filp():
    with pytest.raises(ValidationError):
        verification.check_fvr_stability(P2N1, FilKind.FILP, 0, 2, window(0))


@pytest.mark.parametrize('r, s', [(1, 1), (2, 1), (3, 0)])
def test_rounding_identity(r, s):
    assert_passed(verification.check_filp_round(P2N2, 0, r, s, window(0, -6, 2)))


@pytest.mark.parametrize('q', [0, 1])
@pytest.mark.parametrize('r', [0, 1, 2, 3, 4, 8])
def test_restriction_of_poles(q, r):
    assert_passed(verification.check_rfil(P2N1, q, r, window(q, -5, 2)))


@pytest.mark.parametrize('q', [0, 1])
@pytest.mark.parametrize('r', [0, 1, 2, 3, 6])
def test_level_one_closed_form(q, r):
    assert_passed(verification.check_closed_form(PrimeContext(3, 1), q, r, window(q, -7, 2)))


@pytest.mark.parametrize('q', [0, 1])
def test_wo_module(q):
    assert_passed(verification.check_wo_module(P2N2, q, 2, window(q, -3, 1)))


def test_fillog_explicit_generators():
    assert_passed(verification.check_fillog_explicit(P2N2, 3, window(0, -4, 2)))


@pytest.mark.parametrize('q', [0, 1])
def test_conductor_axioms(q):
    assert_passed(verification.check_conductor_axioms(P2N2, q, window(q, -3, 2), samples=4, seed=7))


@pytest.mark.parametrize('ctx, r', [(P2N2, 2), (P2N1, 3), (P3N2, 3)])
@pytest.mark.parametrize('q', [0, 1])
def test_graded_checks(ctx, r, q):
    assert_passed(verification.graded_char_check(ctx, q, r, window(q, -3, 1)))


def test_leading_teichmuller_part_of_graded_kernel():
    # r - 1 = 2 = 1 * 2^(n-1): F([t^-1]) = t^-2 lies in Fil^p_2 at level one
    parts = verification.graded_parts(P2N2, 0, 3, window(0, -3, 1))
    pole = parts.S.space.column(FormConstructors.teich_form(P2N2, 1, -1))
    assert parts.leading.contains(pole)
    assert not parts.leading.issubset(parts.verschiebung + parts.N)
    assert_passed(verification.graded_char_check(P2N2, 0, 3, window(0, -3, 1)))


@pytest.mark.parametrize('ctx, r', [(P2N2, 2), (P3N2, 3), (P2N1, 3)])
def test_graded_kernel_without_leading_part(ctx, r):
    assert verification.graded_parts(ctx, 0, r, window(0, -3, 1)).leading.length == 0


def test_graded_checks_need_r_at_least_two():
    with pytest.raises(ValidationError):
        verification.graded_char_check(P2N2, 0, 1, window(0))


def test_window_stability_compares_verdicts():
    result = verification.check_window_stability(
        lambda w: verification.check_closed_form(P2N1, 0, 2, w), window(0, -3, 1), guard=1)
    assert result.passed
    assert result.lengths['wide.left'] > result.lengths['narrow.left']


def test_form_space_of_filtration_is_weight_bounded():
    w = window(0, -1, 1)
    space = FiltrationSpaces.filp(P2N2, 2, w)
    assert space.space == FormSpace(P2N2, w)
    assert all(w.contains_weight(u) for x in space.forms() for u in x.weights())
    assert Fraction(-1) in {u for x in space.forms() for u in x.weights()}


# length three

@pytest.mark.parametrize('r', [0, 2, 3])
def test_filtration_checks_at_length_three(r):
    w = window(1, -4, 4)
    results = verification.check_filp_stability(P2N3, 1, r, w) + verification.check_monotonicity(P2N3, 1, r, w)
    results += [verification.check_rfil(P2N3, 1, r, w), verification.check_closed_form(P2N3, 1, r, w)]
    results.append(verification.check_filp_fvr(P2N3, 1, r, w))
    assert_passed(results)


@pytest.mark.parametrize('kind', [FilKind.LOG, FilKind.LOG_PRIME, FilKind.FIL])
@pytest.mark.parametrize('r', [0, 2, 3])
def test_layer_operator_rules_at_length_three(kind, r):
    assert_passed(verification.check_fvr_stability(P2N3, kind, 1, r, window(1, -4, 4)))


@pytest.mark.parametrize('r', [2, 3])
def test_graded_checks_at_length_three(r):
    assert_passed(verification.graded_char_check(P2N3, 1, r, window(1, -4, 4)))
