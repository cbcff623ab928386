# modulus_spaces/verification.py - Exact sequences of the pole and zero modules
import logging
from fractions import Fraction

from chain_linalg.models import FormSpace, LinearMap, WindowModule
from core.exceptions import ValidationError
from core.models import CheckResult
from drw_forms.utils import FormArithmetic, FormOperators
from filtrations.utils import SupportSpaces, restricted_pole_space
from filtrations.verification import check_equal, check_inclusion, operator_checks
from modulus_spaces.models import ModulusDivisor
from modulus_spaces.utils import (
    ZERO, annihilated_by_pline, bn_zn_intersections, bn_zn_pole, check_pole_window, direct_sum,
    frobenius_power, mapped, omega_bz_zero, pline_power, pole_space, pole_window_space, product_forms,
    restricted_twist, split_top, twisted_bz_spaces, twisted_support_space, verschiebung_power, zero_space,
)
from witt_core.models import PrimeContext

logger = logging.getLogger(__name__)


def check_lengths(name, reference, left, right, lengths):
    result = CheckResult.from_bool(name, reference, left == right, lengths,
                                   f"{left} != {right}")
    logger.info(f"{name}: {result.verdict.value}")
    return result


def _label(D):
    return str(ModulusDivisor.coerce(D))


def verify_bnzn(ctx, q, D, window):
    """B_n, Z_n as images, as intersections, and from the twisted Cartier recursion"""
    p, n = ctx.p, ctx.n
    window = window.with_degree(q)
    check_pole_window(D, window)
    label = f"(q={q}, D={_label(D)})"
    pair = bn_zn_pole(p, n, q, D, window)
    cut = bn_zn_intersections(p, n, q, D, window)
    rest, twist = restricted_twist(p, n, D)
    recursion = twisted_bz_spaces(p, q, rest, twist, n, window)
    graded = twisted_support_space(p, q, rest, twist, n, window.dilate(Fraction(1, p ** n)))
    r = ModulusDivisor.coerce(D).origin_multiplicity()
    if q == 0 and r > 0 and r % p == 0:
        # F^n(W_{n+1}) ∩ Ω_(X,D) picks up F^n of Teichmüller poles outside Fil_D W_{n+1}
        z_check = check_inclusion(f"Z_{n} ⊆ F^{n}(W_{n + 1}) ∩ Ω_(X,D) {label}",
                                  "intersection description of B_n and Z_n", pair.Z, cut.Z)
    else:
        z_check = check_equal(f"Z_{n} = F^{n}(W_{n + 1}) ∩ Ω_(X,D) {label}",
                              "intersection description of B_n and Z_n", pair.Z, cut.Z)
    results = [
        z_check,
        check_equal(f"B_{n} = F^{n - 1}d(W_{n}) ∩ Ω_(X,D) {label}", "intersection description of B_n and Z_n",
                    pair.B, cut.B),
        check_equal(f"Z_{n} = Z_({n},{n})(D', pD_{n + 1}) {label}", "Cartier recursion", pair.Z, recursion.Z),
        check_equal(f"B_{n} = B_({n},{n})(D', pD_{n + 1}) {label}", "Cartier recursion", pair.B, recursion.B),
        check_inclusion(f"B_{n} ⊆ Z_{n} {label}", "Cartier recursion", pair.B, pair.Z),
        check_lengths(f"len Z_{n}/B_{n} = len Ω_{n}(D', pD_{n + 1}) {label}", "Cartier recursion",
                      pair.graded_length, graded.length,
                      {'Z': pair.Z.length, 'B': pair.B.length, 'twisted': graded.length}),
    ]
    return results


def verify_rhwm(ctx, q, D, window):
    """R^n(W_{n+1}Ω^q_{(X,D)}) = Ω^q_n(D', pD_{n+1}) inside Ω^q_X"""
    p, n = ctx.p, ctx.n
    r = ModulusDivisor.coerce(D).origin_multiplicity()
    window = window.with_degree(q)
    rest, twist = restricted_twist(p, n, D)
    image = restricted_pole_space(ctx, q, r, window)
    expected = twisted_support_space(p, q, rest, twist, n, window)
    return check_equal(f"R^{n} W_{n + 1}Ω^{q}_(X,{_label(D)}) = Ω^{q}_{n}({rest}, {twist})", "pole restriction",
                       image, expected)


def verify_strHWM(ctx, q, D, window):
    """0 -> B_nΩ^(q+1) -> W_{n+1}Ω^q/p̲W_nΩ^q -> Z_nΩ^q -> 0 for the pole modules

    The window is the level-one window of Z_n; the level n+1 terms use it
    divided by p^n.
    """
    p, n = ctx.p, ctx.n
    r = ModulusDivisor.coerce(D).origin_multiplicity()
    window = window.with_degree(q)
    check_pole_window(D, window)
    label = f"(q={q}, D={_label(D)})"
    upper = ctx.at_level(n + 1)
    level = PrimeContext(p, 1)
    upper_window = window.dilate(Fraction(1, p ** n))
    middle = pole_window_space(upper, q, r, upper_window)
    divisible = mapped(pole_window_space(ctx, q, r, upper_window), FormOperators.pline, middle.space, 'p')
    Z = bn_zn_pole(p, n, q, D, window).Z
    if q == 0:
        B = bn_zn_pole(p, n, 1, D, window.with_degree(1)).B
    else:
        B = WindowModule.zero(FormSpace(level, window.with_degree(1)))

    frob = frobenius_power(n)
    F_n = LinearMap(middle.space, Z.space, frob, name=f"F^{n}")
    kernel_f = middle.kernel(F_n)
    results = [
        check_inclusion(f"p̲W_{n} ⊆ W_{n + 1} {label}", "structure sequence", divisible, middle),
        check_equal(f"F^{n}(W_{n + 1}) = Z_{n} {label}", "structure sequence", middle.image(F_n), Z),
        check_lengths(f"len W_{n + 1}/p̲W_{n} = len B_{n}Ω^{q + 1} + len Z_{n}Ω^{q} {label}", "structure sequence",
                      middle.length - divisible.length, B.length + Z.length,
                      {'middle': middle.length, 'p': divisible.length, 'B': B.length, 'Z': Z.length}),
    ]
    if q == 0:
        both_space = FormSpace(level, (window.with_degree(0), window.with_degree(1)))
        both = LinearMap(middle.space, both_space, lambda x: (frob(x), frob(FormOperators.d(x))),
                         name=f"(F^{n}, F^{n}d)")
        kernel_both = middle.kernel(both)
        fd = LinearMap(middle.space, B.space, lambda x: frob(FormOperators.d(x)), name=f"F^{n}d")
        results.append(check_equal(f"Ker F^{n} ∩ Ker F^{n}d = p̲W_{n} {label}", "structure sequence",
                                   kernel_both, divisible))
        results.append(check_equal(f"F^{n}d(Ker F^{n}) = B_{n}Ω^1 {label}", "structure sequence",
                                   kernel_f.image(fd), B))
    else:
        results.append(check_equal(f"Ker F^{n} = p̲W_{n} {label}", "structure sequence", kernel_f, divisible))
    return results


def verify_long_mod_seq(ctx, q, D, r_w, window):
    """0 -> W_n -p̲^r-> W_{n+r} -(F^n, F^nd)-> W_r ⊕ W_rΩ^(q+1) -(dV^n - V^n)-> W_{n+r}Ω^(q+1)

    The window is the weight window of the W_r terms.
    """
    if not isinstance(r_w, int) or r_w < 1:
        raise ValidationError(f"The level step must be an integer >= 1, got {r_w!r}")
    p, n = ctx.p, ctx.n
    r = ModulusDivisor.coerce(D).origin_multiplicity()
    window = window.with_degree(q)
    label = f"(q={q}, D={_label(D)}, r={r_w})"
    top = ctx.at_level(n + r_w)
    bottom = ctx.at_level(r_w)
    top_window = window.dilate(Fraction(1, p ** n))
    source = pole_window_space(ctx, q, r, top_window)
    middle = pole_window_space(top, q, r, top_window)
    lift = LinearMap(source.space, middle.space, pline_power(r_w), name=f"p^{r_w}")
    frob = frobenius_power(n)
    results = [
        check_lengths(f"p̲^{r_w} injective {label}", "long exact sequence", source.kernel(lift).length, 0,
                      {'source': source.length}),
    ]
    divisible = source.image(lift)
    if q == 0:
        pair_space = FormSpace(bottom, (window.with_degree(0), window.with_degree(1)))
        pairs = direct_sum(pair_space, pole_space(bottom, 0, r, window.with_degree(0)),
                           pole_space(bottom, 1, r, window.with_degree(1)))
        split = LinearMap(middle.space, pair_space, lambda x: (frob(x), frob(FormOperators.d(x))),
                          name=f"(F^{n}, F^{n}d)")
        end_space = FormSpace(top, top_window.with_degree(1))

        def difference(forms):
            alpha, beta = forms
            return FormArithmetic.sub(FormOperators.d(verschiebung_power(n)(alpha)), verschiebung_power(n)(beta))

        glue = LinearMap(pair_space, end_space, difference, name=f"dV^{n} - V^{n}")
        image = middle.image(split)
        results.append(check_equal(f"Ker (F^{n}, F^{n}d) = p̲^{r_w} W_{n} {label}", "long exact sequence",
                                   middle.kernel(split), divisible))
        results.append(check_equal(f"Im (F^{n}, F^{n}d) = Ker (dV^{n} - V^{n}) {label}", "long exact sequence",
                                   image, pairs.kernel(glue)))
    else:
        forms = pole_space(bottom, 1, r, window)
        split = LinearMap(middle.space, forms.space, frob, name=f"F^{n}")
        results.append(check_equal(f"Ker F^{n} = p̲^{r_w} W_{n} {label}", "long exact sequence",
                                   middle.kernel(split), divisible))
        results.append(check_equal(f"Im F^{n} = W_{r_w}Ω^1 {label}", "long exact sequence",
                                   middle.image(split), forms))
    return results


def verify_zero_side(ctx, q, D, window):
    """Structure of W_{n+1}Ω^q_{(X,-D)} -> W_nΩ^q_{(X,-D)}

    The window is the weight window of the level n+1 terms; level-one
    forms feeding V^n and dV^n use it multiplied by p^n.
    """
    p, n = ctx.p, ctx.n
    window = window.with_degree(q)
    label = f"(q={q}, D={_label(D)})"
    upper = ctx.at_level(n + 1)
    level = PrimeContext(p, 1)
    zeros_up = zero_space(upper, q, D, window)
    zeros_here = zero_space(ctx, q, D, window)
    restrict = LinearMap(zeros_up.space, zeros_here.space, FormOperators.restriction, name='R')
    graded = zeros_up.kernel(restrict)

    forms_window = window.dilate(p ** n)
    omega_b, omega_z = omega_bz_zero(p, n, q, D, forms_window)
    lift = LinearMap(omega_b.space, zeros_up.space, verschiebung_power(n), name=f"V^{n}")
    results = [
        check_equal(f"R: W_{n + 1}Ω_(X,-D) -> W_{n}Ω_(X,-D) onto {label}", "restriction surjectivity",
                    zeros_up.image(restrict), zeros_here),
        check_inclusion(f"V^{n}(Ω/B) ⊆ Ker R {label}", "zero-side sequence", omega_b.module.image(lift), graded),
        check_equal(f"Ker V^{n} on (Ω/B) = B_{n}Ω_X {label}", "zero-side sequence",
                    omega_b.module.kernel(lift), omega_b.sub),
        check_lengths(f"len Ker R = len (Ω/B)^{q} + len (Ω/Z)^{q - 1} {label}", "zero-side sequence",
                      graded.length, omega_b.length + omega_z.length,
                      {'gr': graded.length, 'omega/B': omega_b.length, 'omega/Z': omega_z.length}),
    ]
    regular = SupportSpaces.regular(level, forms_window)
    decomposed = mapped(regular, verschiebung_power(n), zeros_up.space, f"V^{n}")
    if q == 1:
        d_lift = LinearMap(omega_z.space, zeros_up.space,
                           lambda b: FormOperators.d(verschiebung_power(n)(b)), name=f"dV^{n}")
        decomposed = decomposed + omega_z.module.image(d_lift)
    results.append(check_inclusion(f"Ker R ⊆ V^{n}(Ω) + dV^{n}(Ω/Z) {label}", "zero-side sequence",
                                   graded, decomposed))
    results.extend(_vdv_checks(ctx, q, D, window, label))
    results.extend(_level_one_zero_checks(ctx, q, D, window, label))
    return results


def _vdv_checks(ctx, q, D, window, label):
    """W_{n+1}Ω_(X,-D) ∩ V^n(Ω) and ∩ dV^n(Ω) as sums over V^j of p̲-divisible zeros"""
    p, n = ctx.p, ctx.n
    level = PrimeContext(p, 1)
    upper = ctx.at_level(n + 1)
    degrees = [(q, 'V', lambda x: x)]
    if q == 1:
        degrees.append((0, 'dV', FormOperators.d))
    results = []
    for degree, name, after in degrees:
        zeros_up = zero_space(upper, q, D, window)
        forms_window = window.with_degree(degree).dilate(p ** n)
        regular = SupportSpaces.regular(level, forms_window)
        left = mapped(regular, lambda x: after(verschiebung_power(n)(x)), zeros_up.space,
                      f"{name}^{n}").intersection(zeros_up)
        right = WindowModule.zero(zeros_up.space)
        for j in range(n + 1):
            here = ctx.at_level(n + 1 - j)
            piece_window = window.with_degree(degree).dilate(p ** j)
            divisible = mapped(SupportSpaces.regular(level, piece_window), pline_power(n - j),
                               FormSpace(here, piece_window), f"p^{n - j}")
            piece = divisible.intersection(zero_space(here, degree, D, piece_window))
            right = right + mapped(piece, lambda x, j=j: after(verschiebung_power(j)(x)), zeros_up.space,
                                   f"{name}^{j}")
        results.append(check_equal(f"W_{n + 1}Ω_(X,-D) ∩ {name}^{n}(Ω) = Σ {name}^j(p̲^(n-j) zeros) {label}",
                                   "V and dV decompositions", left, right))
    return results


def _level_one_zero_checks(ctx, q, D, window, label):
    p, n = ctx.p, ctx.n
    level = PrimeContext(p, 1)
    integral = window.with_degree(q)
    results = []

    rest, top = split_top(D, p, 1)
    expected = twisted_support_space(p, q, rest, top.scaled(p), 0, integral, side=ZERO)
    results.append(check_equal(f"W_1Ω_(X,-D) = Ω(log D_0)(-D) {label}", "level-one zeros",
                               zero_space(level, q, D, integral), expected))

    rest, twist = restricted_twist(p, n, D)
    results.append(check_equal(f"p̲^{n}α ∈ W_{n + 1}Ω_(X,-D) iff α ∈ Ω_{n}(-D', -pD_{n + 1}) {label}",
                               "p-underline membership of zeros", annihilated_by_pline(p, n, q, D, integral),
                               twisted_support_space(p, q, rest, twist, n, integral, side=ZERO)))

    if q == 1:
        functions = integral.with_degree(0)
        exact_all = mapped(SupportSpaces.regular(level, functions), FormOperators.d,
                           FormSpace(level, integral), 'd')
        for name, zeros0, zeros1 in (
                ("Ω_(X,-D)", zero_space(level, 0, D, functions), zero_space(level, 1, D, integral)),
                (f"Ω_{n}(-D', -pD_{n + 1})",
                 twisted_support_space(p, 0, rest, twist, n, functions, side=ZERO),
                 twisted_support_space(p, 1, rest, twist, n, integral, side=ZERO))):
            exact_zero = mapped(zeros0, FormOperators.d, FormSpace(level, integral), 'd')
            results.append(check_equal(f"B(Ω_X) ∩ {name} = d({name}) {label}", "exact forms with zeros",
                                       exact_all.intersection(zeros1), exact_zero))
    return results


def check_sandwich(ctx, q, D, window):
    """zero ⊆ regular ⊆ pole, and both sides move monotonically in r"""
    r = ModulusDivisor.coerce(D).origin_multiplicity()
    window = window.with_degree(q)
    zeros = zero_space(ctx, q, r, window)
    regular = SupportSpaces.regular(ctx, window)
    poles = pole_space(ctx, q, r, window)
    label = f"(q={q}, r={r})"
    results = [
        check_inclusion(f"zero ⊆ regular {label}", "sandwich", zeros, regular),
        check_inclusion(f"regular ⊆ pole {label}", "sandwich", regular, poles),
        check_inclusion(f"zero_{r + 1} ⊆ zero_{r} {label}", "sandwich", zero_space(ctx, q, r + 1, window), zeros),
    ]
    if window.covers(-(r + 1), 0):
        results.append(check_inclusion(f"pole_{r} ⊆ pole_{r + 1} {label}", "sandwich", poles,
                                       pole_space(ctx, q, r + 1, window)))
    return results


def check_zero_stability(ctx, q, D, window, multipliers=2):
    """F, V, R, p̲, d and W_nO-multiplication preserve the zero modules"""
    r = ModulusDivisor.coerce(D).origin_multiplicity()
    label = f"zero_{r} (q={q})"
    results = operator_checks(ctx, q, r, window, lambda c, w: zero_space(c, w.q, r, w), label,
                              "zero-space operator stability")
    window = window.with_degree(q)
    if q == 0:
        target = window.with_degree(1)
        image = mapped(zero_space(ctx, 0, r, window), FormOperators.d, FormSpace(ctx, target), 'd')
        results.append(check_inclusion(f"d {label}", "zero-space operator stability", image,
                                       zero_space(ctx, 1, r, target)))
    factors = SupportSpaces.regular(ctx, window.with_degree(0).with_bounds(0, multipliers))
    wide = window.with_bounds(window.min_exp, window.max_exp + multipliers)
    target = zero_space(ctx, q, r, wide)
    products = WindowModule.from_forms(target.space, product_forms(factors, zero_space(ctx, q, r, window)))
    results.append(check_inclusion(f"W_nO·{label} ⊆ {label}", "zero-space operator stability", products, target))
    return results


__all__ = [
    'check_lengths', 'verify_bnzn', 'verify_rhwm', 'verify_strHWM', 'verify_long_mod_seq',
    'verify_zero_side', 'check_sandwich', 'check_zero_stability',
]
