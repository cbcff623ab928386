# duality_engine/utils.py - Residue pairing, annihilators and Gram matrices
import logging
from fractions import Fraction

from chain_linalg.models import FormSpace, LinearMap, WindowModule, WindowSpec
from chain_linalg.utils import ModuleAlgebra, SmithNormalForm
from core.decorators import timed
from core.exceptions import ContextMismatch, DegreeError, ValidationError
from core.utils import WeightCalculator
from drw_forms.models import make_form
from drw_forms.utils import FormArithmetic, FormOperators, FormPrinter
from duality_engine.models import AnnihilatorSide, LogHomology, PairingReport, PairingVerdict
from filtrations.models import FilKind
from filtrations.utils import FiltrationSpaces, SupportSpaces
from modulus_spaces.utils import (
    POLE, ZERO, WindowQuotient, bn_zn_pole, check_pole_window, classical_bn_zn, omega_bz_zero, pole_window_space,
    verschiebung_power, zero_space,
)
from witt_core.models import PrimeContext

logger = logging.getLogger(__name__)


def pair(a, b):
    """residue(a·b) for forms of complementary degrees"""
    if a.ctx != b.ctx:
        raise ContextMismatch(f"Context mismatch: {a.ctx} vs {b.ctx}")
    if a.q + b.q != 1:
        raise DegreeError(f"Pairing needs degrees summing to 1, got {a.q} and {b.q}")
    return FormOperators.residue(FormArithmetic.mul(a, b))


def irregular_part(w):
    """The coefficients of a 1-form at weights <= 0"""
    p = w.ctx.p
    return make_form(w.ctx, 1, {key: c for key, c in w.coeffs.items() if WeightCalculator.weight(p, key) <= 0})


def opposite_window(spec):
    """Weights of the opposite-side generators that can cancel a pole of the window"""
    reach = max(Fraction(0), -spec.window.min_exp)
    if spec.side is AnnihilatorSide.POLE_OF_ZERO:
        return WindowSpec(1 - spec.q, 0, reach)
    return WindowSpec(1 - spec.q, -spec.r, max(reach, Fraction(0)))


def opposite_generators(spec):
    window = opposite_window(spec)
    if spec.side is AnnihilatorSide.POLE_OF_ZERO:
        module = zero_space(spec.ctx, 1 - spec.q, spec.r, window)
    else:
        module = pole_window_space(spec.ctx, 1 - spec.q, spec.r, window)
    return module.forms()


@timed()
def annihilator_space(spec):
    """{ω in the window : ω·g is regular for every opposite-side generator g}"""
    window = spec.window.with_degree(spec.q)
    ambient = FormSpace(spec.ctx, window)
    generators = opposite_generators(spec)
    low = window.min_exp + opposite_window(spec).min_exp
    if not generators or low > 0:
        return WindowModule.full(ambient)
    conditions = FormSpace(spec.ctx, tuple(WindowSpec(1, low, 0) for _ in generators))

    def obstruction(omega):
        return tuple(irregular_part(FormArithmetic.mul(omega, g)) for g in generators)

    stacked = LinearMap(ambient, conditions, obstruction, clip=True, name='irregular part')
    result = WindowModule.full(ambient).kernel(stacked)
    logger.debug(f"{spec.side.value} annihilator (r={spec.r}, q={spec.q}): {len(generators)} conditions, "
                 f"length {result.length}")
    return result


def gram_matrix(left_forms, right_forms):
    return [[pair(a, b) for b in right_forms] for a in left_forms]


def _kernel_module(module, rows, p, N):
    """Combinations of the module generators whose Gram rows vanish"""
    columns = [{k: value for k, value in enumerate(row) if value % p ** N} for row in rows]
    relations = ModuleAlgebra.relations(columns, p, N)
    modulus = module.space.modulus
    vectors = []
    for relation in relations:
        combined = {}
        for index, coefficient in relation.items():
            for coordinate, value in module.generators[index].items():
                combined[coordinate] = (combined.get(coordinate, 0) + coefficient * value) % modulus
        vectors.append(combined)
    return WindowModule(module.space, vectors)


@timed()
def pairing_report(left, right):
    """Perfectness of the residue pairing between two WindowQuotients"""
    ctx = left.space.ctx
    p, N = ctx.p, ctx.n
    modulus = ctx.modulus
    left_forms = [left.space.form(g) for g in left.module.generators]
    right_forms = [right.space.form(g) for g in right.module.generators]
    gram = gram_matrix(left_forms, right_forms)

    witness = None
    for a in left.sub.forms():
        if any(pair(a, b) for b in right_forms):
            witness = f"{FormPrinter.render(a)} pairs nontrivially with the right module"
            break
    for b in right.sub.forms():
        if witness is None and any(pair(a, b) for a in left_forms):
            witness = f"{FormPrinter.render(b)} pairs nontrivially with the left module"

    left_kernel = _kernel_module(left.module, gram, p, N)
    transposed = [list(column) for column in zip(*gram)] if gram else [[] for _ in right_forms]
    right_kernel = _kernel_module(right.module, transposed, p, N)
    left_kernel_length = left_kernel.quotient_length(left.sub)
    right_kernel_length = right_kernel.quotient_length(right.sub)
    divisors = ()
    if gram and right_forms:
        divisors = SmithNormalForm.compute(gram, p, N, track_left=False).divisors
    left_length, right_length = left.length, right.length
    perfect = (witness is None and left_kernel_length == 0 and right_kernel_length == 0
               and left_length == right_length)
    if not perfect and witness is None:
        if left_kernel_length:
            witness = left_kernel.witness_outside(left.sub)
        elif right_kernel_length:
            witness = right_kernel.witness_outside(right.sub)
        else:
            witness = f"lengths differ: {left_length} vs {right_length}"
    report = PairingReport(tuple(tuple(row) for row in gram), tuple(divisors), left_length, right_length,
                           left_kernel_length, right_kernel_length,
                           PairingVerdict.PERFECT if perfect else PairingVerdict.DEGENERATE, witness, modulus)
    logger.info(f"Pairing {left_length} x {right_length}: {report.verdict.value}")
    return report


def graded_quotients(ctx, q, r, window):
    """(Fil^p_r W_nΩ^q / W_nΩ^q_O) and (W_nΩ^(1-q)_O / W_nΩ^(1-q)_(X,-D)) on mirrored windows"""
    window = window.with_degree(q)
    check_pole_window(r, window)
    mirrored = WindowSpec(1 - q, -window.max_exp, -window.min_exp)
    poles = pole_window_space(ctx, q, r, window)
    regular = SupportSpaces.regular(ctx, window)
    functions = SupportSpaces.regular(ctx, mirrored)
    zeros = zero_space(ctx, 1 - q, r, mirrored)
    return WindowQuotient(poles, regular), WindowQuotient(functions, zeros)


def structural_quotients(p, n, q, D, window):
    """The two finite Cartier-duality pairs for the structural pieces of index n

    ((Ω/B)_X / (Ω/B)_(X,-D), Z_nΩ^(1-q)_(X,D) / Z_nΩ^(1-q)_X) and
    ((Ω/Z)_X / (Ω/Z)_(X,-D), B_nΩ^(2-q)_(X,D) / B_nΩ^(2-q)_X), the second
    only in degree q = 1.
    """
    window = window.with_degree(q)
    level = PrimeContext(p, 1)
    mirrored = WindowSpec(1 - q, -window.max_exp, -window.min_exp)
    omega_b, omega_z = omega_bz_zero(p, n, q, D, window)
    first = (
        WindowQuotient(SupportSpaces.regular(level, window), omega_b.module),
        WindowQuotient(bn_zn_pole(p, n, 1 - q, D, mirrored).Z, classical_bn_zn(p, n, 1 - q, mirrored).Z),
    )
    if q == 0 or n == 0:
        return [first]
    functions = window.with_degree(0)
    forms = mirrored.with_degree(1)
    second = (
        WindowQuotient(SupportSpaces.regular(level, functions), omega_z.module),
        WindowQuotient(bn_zn_pole(p, n, 1, D, forms).B, classical_bn_zn(p, n, 1, forms).B),
    )
    return [first, second]


def _cartier_domain(ctx, q, r, window):
    """(FW_{n+1}Ω^q)_(X,D) = F(W_{n+1}Ω^q) ∩ W_nΩ^q_(X,D)"""
    p = ctx.p
    upper = FormSpace(ctx.at_level(ctx.n + 1), window.dilate(Fraction(1, p)))
    frobenius = LinearMap(upper, FormSpace(ctx, window), FormOperators.frobenius, name='F')
    image = WindowModule.full(upper).image(frobenius)
    return image.intersection(pole_window_space(ctx, q, r, window))


def _dv_top(ctx, window):
    """dV^(n-1)(Ω^0_X) inside the level-n 1-form window"""
    level_one = FormSpace(ctx.at_level(1), window.with_degree(0).dilate(ctx.p ** (ctx.n - 1)))
    lift = LinearMap(level_one, FormSpace(ctx, window.with_degree(1)),
                     lambda b: FormOperators.d(verschiebung_power(ctx.n - 1)(b)), name='dV^(n-1)')
    return WindowModule.full(level_one).image(lift)


@timed()
def log_complex_homology(sign, ctx, q, r, window):
    """Kernel and cokernel of 1 - C (pole side) or C^-1 - 1 (zero side) on a window"""
    window = window.with_degree(q)
    if not window.contains_weight(0):
        raise ValidationError(f"The fixed-point complexes need a window around weight 0, got {window}")
    p = ctx.p
    if sign == POLE:
        domain = _cartier_domain(ctx, q, r, window)
        target = pole_window_space(ctx, q, r, window)
        step = LinearMap(domain.space, target.space,
                         lambda x: FormArithmetic.sub(x, FormOperators.cartier(x)), name='1 - C')
        image = domain.image(step)
        kernel = domain.kernel(step)
        fil = FiltrationSpaces.layer(ctx, FilKind.FIL, r, window)
        cokernel = (target + image).length - image.length
        fil_image = (fil + image).length - image.length
        homology = LogHomology(sign, q, r, window, kernel.length, cokernel, fil_image)
    elif sign == ZERO:
        domain = zero_space(ctx, q, r, window)
        wide = window.with_bounds(min(window.min_exp, p * window.min_exp), max(window.max_exp, p * window.max_exp))
        target = zero_space(ctx, q, r, wide)
        exact = WindowModule.zero(target.space)
        if q == 1:
            exact = _dv_top(ctx, wide).intersection(target)

        def inverse_step(x):
            representative, _ = FormOperators.inv_cartier(x)
            return FormArithmetic.sub(representative, x)

        step = LinearMap(domain.space, target.space, inverse_step, name='C^-1 - 1')
        kernel = domain.preimage(step, exact)
        image = domain.image(step) + exact
        cokernel = (target + exact).length - image.length
        homology = LogHomology(sign, q, r, window, kernel.length, cokernel)
    else:
        raise ValidationError(f"Sign must be {POLE!r} or {ZERO!r}, got {sign!r}")
    logger.info(f"{sign} fixed-point complex (q={q}, r={r}) on {window}: "
                f"H0={homology.kernel_length}, H1={homology.cokernel_length}")
    return homology


__all__ = [
    'POLE', 'ZERO', 'pair', 'irregular_part', 'opposite_window', 'annihilator_space', 'gram_matrix',
    'pairing_report', 'graded_quotients', 'structural_quotients', 'log_complex_homology',
]
