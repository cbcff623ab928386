# duality_engine/verification.py - Perfectness and compatibility checks of the residue pairing
import logging
import random

from chain_linalg.models import WindowSpec
from core.models import CheckResult
from drw_forms.models import SupportProfile
from drw_forms.utils import FormArithmetic, FormOperators, FormPrinter
from duality_engine.models import AnnihilatorSide, AnnihilatorSpec
from duality_engine.utils import (
    POLE, ZERO, annihilator_space, graded_quotients, log_complex_homology, pair, pairing_report,
    structural_quotients,
)
from filtrations.verification import check_equal, random_form
from modulus_spaces.utils import check_pole_window, pole_window_space, zero_space
from modulus_spaces.verification import check_lengths

logger = logging.getLogger(__name__)


def mirrored(window):
    return WindowSpec(window.q, -window.max_exp, -window.min_exp)


def check_multiplication_containment(ctx, q, r, window):
    """Every Fil^p_r generator times every zero-ideal generator is regular"""
    window = window.with_degree(q)
    poles = pole_window_space(ctx, q, r, window).forms()
    zeros = zero_space(ctx, 1 - q, r, mirrored(window).with_degree(1 - q)).forms()
    witness = None
    for x in poles:
        for y in zeros:
            product = FormArithmetic.mul(x, y)
            if not SupportProfile.of(product).is_regular_support(1):
                witness = f"{FormPrinter.render(x)} · {FormPrinter.render(y)} = {FormPrinter.render(product)}"
                break
        if witness:
            break
    result = CheckResult.from_bool(f"FilP_{r} · zero_{r} ⊆ regular (q={q})", "pole-zero multiplication",
                                   witness is None, {'poles': len(poles), 'zeros': len(zeros)}, witness)
    logger.info(f"{result.name}: {result.verdict.value}")
    return result


def verify_local_duality(ctx, q, r, window):
    """Annihilator descriptions of both sides and perfectness of the graded residue pairing"""
    window = window.with_degree(q)
    check_pole_window(r, window)
    results = [check_multiplication_containment(ctx, q, r, window)]
    pole_side = annihilator_space(AnnihilatorSpec(AnnihilatorSide.POLE_OF_ZERO, r, q, ctx, window))
    results.append(check_equal(f"FilP_{r} = annihilator of zero_{r} (q={q})", "local duality",
                               pole_window_space(ctx, q, r, window), pole_side))
    positive = mirrored(window)
    zero_side = annihilator_space(AnnihilatorSpec(AnnihilatorSide.ZERO_OF_POLE, r, q, ctx, positive))
    results.append(check_equal(f"zero_{r} = annihilator of FilP_{r} (q={q})", "local duality",
                               zero_space(ctx, q, r, positive), zero_side))
    left, right = graded_quotients(ctx, q, r, window)
    report = pairing_report(left, right)
    results.append(report.to_check(f"FilP_{r}/regular x regular/zero_{r} perfect (q={q})", "local duality"))
    if q == 1:
        results.append(check_lengths(f"len FilP_{r}/regular = n·r (q=1)", "local duality",
                                     report.left_length, ctx.n * r, report.lengths()))
    return results, report


def verify_cartier_duality(p, n, q, D, window):
    """(Ω/B) against Z_n and (Ω/Z) against B_n, paired by the residue after C^n"""
    window = window.with_degree(q)
    check_pole_window(D, mirrored(window))
    labels = [f"(Ω/B)^{q}_{n} x Z_{n}Ω^{1 - q}", f"(Ω/Z)^{q - 1}_{n} x B_{n}Ω^{2 - q}"]
    results = []
    reports = []
    for label, (left, right) in zip(labels, structural_quotients(p, n, q, D, window)):
        report = pairing_report(left, right)
        reports.append(report)
        results.append(report.to_check(f"{label} perfect (D={D})", "Cartier duality"))
    return results, reports


def check_balancedness(ctx, q, window, samples=6, seed=0):
    """pair(f·a, b) = pair(a, f·b) for regular 0-forms f"""
    rng = random.Random(seed)
    window = window.with_degree(q)
    functions = window.with_degree(0).with_bounds(0, max(window.max_exp, 1))
    witness = None
    for _ in range(samples):
        f = random_form(ctx, 0, functions, rng)
        a = random_form(ctx, q, window, rng)
        b = random_form(ctx, 1 - q, mirrored(window), rng)
        left = pair(FormArithmetic.mul(f, a), b)
        right = pair(a, FormArithmetic.mul(f, b))
        if left != right:
            witness = f"f={FormPrinter.render(f)}, a={FormPrinter.render(a)}, b={FormPrinter.render(b)}"
            break
    return CheckResult.from_bool(f"pair(f·a, b) = pair(a, f·b) (q={q})", "pairing balance", witness is None,
                                 {'samples': samples}, witness)


def check_residue_cartier(ctx, window, samples=6, seed=0):
    """residue(C(F(ω))) = residue(R(ω)) for ω in W_{n+1}Ω^1"""
    rng = random.Random(seed)
    upper = ctx.at_level(ctx.n + 1)
    witness = None
    for _ in range(samples):
        omega = random_form(upper, 1, window.with_degree(1), rng)
        left = FormOperators.residue(FormOperators.cartier(FormOperators.frobenius(omega)))
        right = FormOperators.residue(FormOperators.restriction(omega))
        if left != right:
            witness = f"ω={FormPrinter.render(omega)}: {left} != {right}"
            break
    return CheckResult.from_bool("residue∘C∘F = residue∘R", "residue and Cartier", witness is None,
                                 {'samples': samples}, witness)


def check_fixed_points(ctx, q, r, window):
    """Ker(1 - C) on the pole side: Z/p^n constants, and Z/p^n dlog t once r >= 1"""
    homology = log_complex_homology(POLE, ctx, q, r, window)
    expected = ctx.n if (q == 0 or r >= 1) else 0
    return check_lengths(f"len Ker(1 - C) = {expected} (q={q}, r={r})", "fixed points of C",
                         homology.kernel_length, expected, homology.to_dict())


def fixed_point_report(ctx, q, r, window):
    """Both fixed-point complexes, reported without assertions beyond the kernel"""
    return [log_complex_homology(POLE, ctx, q, r, window), log_complex_homology(ZERO, ctx, q, r, window)]


__all__ = [
    'mirrored', 'check_multiplication_containment', 'verify_local_duality', 'verify_cartier_duality',
    'check_balancedness', 'check_residue_cartier', 'check_fixed_points', 'fixed_point_report',
]
