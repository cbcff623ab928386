# filtrations/verification.py - Structural checks of the pole filtration
import logging
import random
from dataclasses import dataclass
from fractions import Fraction

from django.conf import settings

from chain_linalg.models import FormSpace, LinearMap, WindowModule
from core.exceptions import ValidationError
from core.models import CheckResult
from core.utils import PAdicArithmetic
from drw_forms.models import SupportProfile, make_form
from drw_forms.utils import FormArithmetic, FormConstructors, FormOperators
from filtrations.models import FilKind
from filtrations.utils import (
    FiltrationSpaces, SupportSpaces, closed_form_bound, conductor, fil_log_membership,
    fillog_explicit_generators, restricted_pole_space, rfil_expected_bound,
)

logger = logging.getLogger(__name__)


def lengths_of(**modules):
    return {name: module.length for name, module in modules.items()}


def check_equal(name, reference, left, right):
    ok = left.equals(right)
    witness = None
    if not ok:
        witness = left.witness_outside(right) or right.witness_outside(left)
    result = CheckResult.from_bool(name, reference, ok, lengths_of(left=left, right=right), witness)
    logger.info(f"{name}: {result.verdict.value}")
    return result


def check_inclusion(name, reference, sub, ambient):
    ok = sub.issubset(ambient)
    result = CheckResult.from_bool(name, reference, ok, lengths_of(sub=sub, ambient=ambient),
                                   sub.witness_outside(ambient) if not ok else None)
    logger.info(f"{name}: {result.verdict.value}")
    return result


def _mapped(module, op, target_space, name):
    """Image of a window module under a form-level operation"""
    return module.image(LinearMap(module.space, target_space, op, name=name))


def check_filp_base(ctx, window):
    """Fil^p_0 is the regular module and Fil^p_1 the log module"""
    results = []
    for q in (0, 1):
        w = window.with_degree(q)
        results.append(check_equal(f"FilP_0 = regular (q={q})", "base layers",
                                   FiltrationSpaces.filp(ctx, 0, w), SupportSpaces.regular(ctx, w)))
        results.append(check_equal(f"FilP_1 = log (q={q})", "base layers",
                                   FiltrationSpaces.filp(ctx, 1, w), SupportSpaces.log(ctx, w)))
    return results


def check_monotonicity(ctx, q, r_max, window):
    window = window.with_degree(q)
    results = []
    previous = FiltrationSpaces.filp(ctx, 0, window)
    for r in range(1, r_max + 1):
        current = FiltrationSpaces.filp(ctx, r, window)
        results.append(check_inclusion(f"FilP_{r - 1} ⊆ FilP_{r} (q={q})", "monotonicity",
                                        previous, current))
        previous = current
    return results


def check_filp_fvr(ctx, q, r, window):
    """p-underline(Fil^p_r W_{n-1}) = p Fil^p_{pr} W_n"""
    if ctx.n < 2:
        raise ValidationError("The p-underline identity needs n >= 2")
    window = window.with_degree(q)
    p = ctx.p
    lower = FiltrationSpaces.filp(ctx.at_level(ctx.n - 1), r, window)
    image = _mapped(lower, FormOperators.pline, FormSpace(ctx, window), 'p')
    scaled = FiltrationSpaces.filp(ctx, p * r, window).scaled(p)
    return check_equal(f"p̲ FilP_{r} = p FilP_{p * r} (q={q})", "operator stability", image, scaled)


def operator_checks(ctx, q, r, window, layer, label, reference, pline=True):
    """V, p-underline (level n -> n+1) and F, R (level n+1 -> n) keep a layer

    With pline=False the p-underline inclusion is skipped; the layers of
    fil^log, fil^log' and fil only satisfy p-underline(fil_r) = p fil_(pr).
    """
    p = ctx.p
    upper = ctx.at_level(ctx.n + 1)
    window = window.with_degree(q)
    here = layer(ctx, window)
    results = []

    v_window = window.dilate(Fraction(1, p))
    image = _mapped(here, FormOperators.verschiebung, FormSpace(upper, v_window), 'V')
    results.append(check_inclusion(f"V {label}", reference, image, layer(upper, v_window)))

    if pline:
        image = _mapped(here, FormOperators.pline, FormSpace(upper, window), 'p')
        results.append(check_inclusion(f"p̲ {label}", reference, image, layer(upper, window)))

    above = layer(upper, window)
    image = _mapped(above, FormOperators.restriction, FormSpace(ctx, window), 'R')
    results.append(check_inclusion(f"R {label}", reference, image, here))

    f_window = window.dilate(p)
    image = _mapped(above, FormOperators.frobenius, FormSpace(ctx, f_window), 'F')
    results.append(check_inclusion(f"F {label}", reference, image, layer(ctx, f_window)))
    return results


def check_filp_stability(ctx, q, r, window):
    """F, V, R, p-underline and d preserve Fil^p_r"""
    label = f"FilP_{r} (q={q})"
    results = operator_checks(ctx, q, r, window, lambda c, w: FiltrationSpaces.filp(c, r, w),
                               label, "operator stability")
    if q == 0:
        source = FiltrationSpaces.filp(ctx, r, window.with_degree(0))
        target = window.with_degree(1)
        image = _mapped(source, FormOperators.d, FormSpace(ctx, target), 'd')
        results.append(check_inclusion(f"d {label}", "operator stability", image,
                                        FiltrationSpaces.filp(ctx, r, target)))
    return results


def check_fvr_stability(ctx, kind, q, r, window):
    """V, p-underline, R, F rules for fil^log, fil^log' and fil"""
    kind = FilKind(kind)
    if kind not in (FilKind.LOG, FilKind.LOG_PRIME, FilKind.FIL):
        raise ValidationError(f"Layer operator rules cover log, logPrime and fil, not {kind.value}")
    label = f"{kind.value}_{r} (q={q})"
    results = operator_checks(ctx, q, r, window, lambda c, w: FiltrationSpaces.layer(c, kind, r, w),
                               label, "layer operator rules", pline=False)
    window = window.with_degree(q)
    p = ctx.p
    upper = ctx.at_level(ctx.n + 1)
    image = _mapped(FiltrationSpaces.layer(ctx, kind, r, window), FormOperators.pline,
                    FormSpace(upper, window), 'p')
    scaled = FiltrationSpaces.layer(upper, kind, p * r, window).scaled(p)
    results.append(check_equal(f"p̲ {label} = p {kind.value}_{p * r}", "layer operator rules", image, scaled))
    if kind is FilKind.LOG and q == 1:
        w0 = window.with_degree(0)
        f_window = window.dilate(p)
        source = FiltrationSpaces.layer(upper, kind, r, w0)
        image = _mapped(source, lambda x: FormOperators.frobenius(FormOperators.d(x)),
                        FormSpace(ctx, f_window), 'Fd')
        target = FiltrationSpaces.layer(ctx, kind, r, f_window)
        differentials = _mapped(FiltrationSpaces.layer(ctx, kind, r, f_window.with_degree(0)),
                                FormOperators.d, FormSpace(ctx, f_window), 'd')
        results.append(check_inclusion(f"Fd fil^log_{r} ⊆ fil^log_{r} + d fil^log_{r}", "layer operator rules",
                                        image, target + differentials))
    return results


def check_filp_round(ctx, q, r, s, window):
    """p^s fil_{(r-1)p^s} = p^s fil_{rp^s - 1} for fil^log and fil^log'"""
    if r < 1 or not 0 <= s <= ctx.n - 1:
        raise ValidationError(f"Rounding identity needs r >= 1 and 0 <= s <= n-1, got r={r}, s={s}")
    window = window.with_degree(q)
    scale = ctx.p ** s
    results = []
    for kind in (FilKind.LOG, FilKind.LOG_PRIME):
        left = FiltrationSpaces.layer(ctx, kind, (r - 1) * scale, window).scaled(scale)
        right = FiltrationSpaces.layer(ctx, kind, r * scale - 1, window).scaled(scale)
        results.append(check_equal(f"p^{s} {kind.value}_{(r - 1) * scale} = p^{s} {kind.value}_{r * scale - 1}",
                                   "rounding identity", left, right))
    return results


def check_rfil(ctx, q, r, window):
    """R^n(Fil^p_r W_{n+1}) against its support description"""
    window = window.with_degree(q)
    image = restricted_pole_space(ctx, q, r, window)
    bound = rfil_expected_bound(ctx.p, ctx.n, q, r)
    expected = SupportSpaces.at_least(ctx.at_level(1), window, bound)
    return check_equal(f"R^{ctx.n} FilP_{r} (q={q}) = weights >= {bound}", "restriction of poles", image, expected)


def check_closed_form(ctx, q, r, window):
    """At n = 1, Fil^p_r is a plain support module"""
    level = ctx.at_level(1)
    window = window.with_degree(q)
    bound = closed_form_bound(ctx.p, q, r)
    return check_equal(f"FilP_{r} @1 (q={q}) = weights >= {bound}", "level-one closed form",
                       FiltrationSpaces.filp(level, r, window), SupportSpaces.at_least(level, window, bound))


def check_wo_module(ctx, q, r, window, multipliers=2):
    """Products of Fil^p_r generators with regular 0-forms stay in Fil^p_r"""
    window = window.with_degree(q)
    source = FiltrationSpaces.filp(ctx, r, window)
    p = ctx.p
    scale = p ** (ctx.n - 1)
    factors = [make_form(ctx, 0, {key: 1}) for key in
               window.with_bounds(0, multipliers).keys(ctx)]
    wide = window.with_bounds(window.min_exp, window.max_exp + multipliers)
    target = FiltrationSpaces.filp(ctx, r, wide)
    products = []
    for generator in source.forms():
        for factor in factors:
            product = FormArithmetic.mul(factor, generator)
            if not product.is_zero():
                products.append(product)
    module = WindowModule.from_forms(target.space, products)
    logger.debug(f"W_nO closure: {len(products)} products, weight step 1/{scale}")
    return check_inclusion(f"W_nO·FilP_{r} ⊆ FilP_{r} (q={q})", "W_nO-module", module, target)


def check_fillog_explicit(ctx, r, window):
    """V^j([t^i]) with p^(n-1-j) i >= -r span fil^log_r W_n"""
    window = window.with_degree(0)
    forms = fillog_explicit_generators(ctx, r, window)
    space = FiltrationSpaces.layer(ctx, FilKind.LOG, r, window)
    explicit = WindowModule.from_forms(space.space, forms)
    membership = all(fil_log_membership(x, r) for x in forms)
    results = [
        CheckResult.from_bool(f"explicit generators of fil^log_{r} satisfy the coordinate bound",
                              "explicit fil^log generators", membership, {'generators': len(forms)}),
    ]
    results.append(check_equal(f"span of explicit generators = fil^log_{r}", "explicit fil^log generators",
                               explicit, space))
    return results


def random_form(ctx, q, window, rng, terms=3):
    keys = window.with_degree(q).keys(ctx)
    coeffs = {}
    for key in rng.sample(keys, min(terms, len(keys))):
        coeffs[key] = rng.randrange(1, ctx.p ** (ctx.n - key[0]))
    return make_form(ctx, q, coeffs)


def check_conductor_axioms(ctx, q, window, samples=8, seed=0):
    """c(x) = 0 exactly on regular forms, and c(x + y) <= max(c(x), c(y))"""
    rng = random.Random(seed)
    regular_ok = True
    additive_ok = True
    witness = None
    for _ in range(samples):
        x = random_form(ctx, q, window, rng)
        y = random_form(ctx, q, window, rng)
        cx, cy, cxy = conductor(x), conductor(y), conductor(FormArithmetic.add(x, y))
        if (cx == 0) != SupportProfile.of(x).is_regular_support(q):
            regular_ok = False
            witness = witness or f"c({x}) = {cx}"
        if cxy > max(cx, cy):
            additive_ok = False
            witness = witness or f"c({x} + {y}) = {cxy} > max({cx}, {cy})"
    return [
        CheckResult.from_bool(f"c(x) = 0 iff x regular (q={q})", "conductor regularity", regular_ok,
                              {'samples': samples}, witness),
        CheckResult.from_bool(f"c(x+y) <= max(c(x), c(y)) (q={q})", "conductor subadditivity", additive_ok,
                              {'samples': samples}, witness),
    ]


@dataclass(frozen=True)
class GradedParts:
    """Submodules of Fil^p_r W_n describing the graded piece gr_r = S / N"""
    S: WindowModule
    N: WindowModule
    verschiebung: WindowModule
    leading: WindowModule


def graded_parts(ctx, q, r, window):
    """S, N, V(W_{n-1}) ∩ S and the leading Teichmüller part of Ker F^(n-1)

    N = Fil^p_{r-1} W_n + p-underline(Fil^p_r W_{n-1}). When n >= 2 and
    r - 1 = r1 p^(n-1) with p not dividing r1, F^(n-1) also sends
    [t]^(-r1) W_n(O) into Fil^p_{r-1} at level one; otherwise leading is zero.
    """
    n, p = ctx.n, ctx.p
    window = window.with_degree(q)
    S = FiltrationSpaces.filp(ctx, r, window)
    N = FiltrationSpaces.filp(ctx, r - 1, window)
    if n < 2:
        zero = WindowModule.zero(S.space)
        return GradedParts(S, N, zero, zero)
    lower = FiltrationSpaces.filp(ctx.at_level(n - 1), r, window)
    N = N + _mapped(lower, FormOperators.pline, S.space, 'p')
    v_source = FormSpace(ctx.at_level(n - 1), window.dilate(p))
    v_image = _mapped(WindowModule.full(v_source), FormOperators.verschiebung, S.space, 'V').intersection(S)
    leading = WindowModule.zero(S.space)
    if r > 1 and PAdicArithmetic.valuation(r - 1, p) == n - 1:
        r1 = (r - 1) // p ** (n - 1)
        pole = FormConstructors.teich_form(ctx, 1, -r1)
        shifted = window.with_bounds(window.min_exp + r1, window.max_exp + r1)
        products = [FormArithmetic.mul(pole, g) for g in SupportSpaces.regular(ctx, shifted).forms()]
        leading = WindowModule.from_forms(S.space, products, clip=True).intersection(S)
    return GradedParts(S, N, v_image, leading)


def graded_char_check(ctx, q, r, window):
    """Injectivity of F^(n-1) + F^(n-1)d on the graded piece and the two exact sequences

    The graded piece is S / N with S = Fil^p_r W_n and
    N = Fil^p_{r-1} W_n + p-underline(Fil^p_r W_{n-1}).
    """
    if r < 2:
        raise ValidationError(f"Graded checks need r >= 2, got {r}")
    n, p = ctx.n, ctx.p
    window = window.with_degree(q)
    bottom = ctx.at_level(1)
    top_window = window.dilate(p ** (n - 1))

    parts = graded_parts(ctx, q, r, window)
    S, N = parts.S, parts.N

    def frob(x):
        return FormOperators.iterate(FormOperators.frobenius, x, n - 1)

    if q == 0:
        target = FormSpace(bottom, (top_window.with_degree(0), top_window.with_degree(1)))
        phi = LinearMap(S.space, target, lambda x: (frob(x), frob(FormOperators.d(x))), name='F^(n-1)+F^(n-1)d')
        T = WindowModule(target, [target.column((f, None)) for f in
                                  FiltrationSpaces.filp(bottom, r - 1, top_window.with_degree(0)).forms()]
                         + [target.column((None, f)) for f in
                            FiltrationSpaces.filp(bottom, r - 1, top_window.with_degree(1)).forms()])
    else:
        target = FormSpace(bottom, top_window)
        phi = LinearMap(S.space, target, frob, name='F^(n-1)')
        T = FiltrationSpaces.filp(bottom, r - 1, top_window)
    kernel = S.preimage(phi, T)
    results = [CheckResult.from_bool(
        f"F^{n - 1}⊕F^{n - 1}d injective on gr_{r} (q={q})", "graded injectivity", kernel.issubset(N),
        lengths_of(S=S, N=N, kernel=kernel), kernel.witness_outside(N))]

    # gr-ex2: Ker(F^(n-1)) = (V(W_{n-1}) ∩ S) + leading + N
    level_one = FormSpace(bottom, top_window)
    frob_only = LinearMap(S.space, level_one, frob, name='F^(n-1)')
    low_target = FiltrationSpaces.filp(bottom, r - 1, top_window)
    kernel_f = S.preimage(frob_only, low_target)
    expected = parts.verschiebung + parts.leading + N
    name = f"Ker F^{n - 1} = V ∩ FilP_{r} + N (q={q})"
    if parts.leading.length:
        name = f"Ker F^{n - 1} = V ∩ FilP_{r} + [t]^-{(r - 1) // p ** (n - 1)}W(O) ∩ FilP_{r} + N (q={q})"
    results.append(check_equal(name, "graded exactness", kernel_f + N, expected))

    # gr-ex1: Ker(F^(n-1)d) = (F(W_{n+1}) ∩ S) + N
    if q == 0:
        d_target = FormSpace(bottom, top_window.with_degree(1))
        frob_d = LinearMap(S.space, d_target, lambda x: frob(FormOperators.d(x)), name='F^(n-1)d')
        kernel_fd = S.preimage(frob_d, FiltrationSpaces.filp(bottom, r - 1, top_window.with_degree(1)))
    else:
        kernel_fd = S
    f_source = FormSpace(ctx.at_level(n + 1), window.dilate(Fraction(1, p)))
    f_image = _mapped(WindowModule.full(f_source), FormOperators.frobenius, S.space, 'F')
    expected = f_image.intersection(S) + N
    results.append(check_equal(f"Ker F^{n - 1}d = F ∩ FilP_{r} + N (q={q})", "graded exactness",
                               kernel_fd + N, expected))
    return results


def check_window_stability(fn, window, guard=None):
    """Re-run a check on a window widened by the guard band and compare verdicts"""
    guard = settings.DRWLAB_WINDOW_GUARD if guard is None else guard
    narrow = fn(window)
    wide = fn(window.widen(guard))
    ok = narrow.verdict == wide.verdict
    lengths = {f"narrow.{k}": v for k, v in narrow.lengths.items()}
    lengths.update({f"wide.{k}": v for k, v in wide.lengths.items()})
    return CheckResult.from_bool(f"window stability of {narrow.name}", narrow.reference, ok, lengths,
                                 f"{narrow.verdict.value} on {window}, {wide.verdict.value} on guard {guard}")


