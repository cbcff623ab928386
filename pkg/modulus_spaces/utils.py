# modulus_spaces/utils.py - Pole and zero spaces, B_n/Z_n and the twisted Cartier recursion
import logging
from dataclasses import dataclass
from fractions import Fraction

from chain_linalg.models import FormSpace, LinearMap, WindowModule
from core.decorators import timed
from core.exceptions import ValidationError, WindowTooSmall
from core.utils import PAdicArithmetic
from core.validators import validate_ladder, validate_prime
from drw_forms.utils import FormArithmetic, FormOperators
from filtrations.models import FilKind, FiltrationId
from filtrations.utils import FiltrationSpaces, SupportSpaces, window_space
from modulus_spaces.managers import zero_generators
from modulus_spaces.models import ModulusDivisor, PDivDecomposition
from witt_core.models import PrimeContext

logger = logging.getLogger(__name__)

POLE = 'pole'
ZERO = 'zero'


def p_div_decompose(E, ladder, p):
    """Split each multiplicity along the largest ladder exponent p^(r_i) dividing it"""
    validate_prime(p)
    ladder = tuple(ladder)
    validate_ladder(ladder)
    if not ladder:
        raise ValidationError("The exponent ladder must not be empty")
    E = ModulusDivisor.coerce(E)
    prime_part = {}
    parts = [{} for _ in ladder]
    for name, m in E.points:
        for i in range(len(ladder) - 1, -1, -1):
            if m % p ** ladder[i] == 0:
                parts[i][name] = m // p ** ladder[i]
                break
        else:
            prime_part[name] = m
    decomposition = PDivDecomposition(p, ladder, ModulusDivisor.of(prime_part),
                                      tuple(ModulusDivisor.of(part) for part in parts))
    logger.debug(f"{E} along {ladder} (p={p}): {decomposition}")
    return decomposition


def split_top(D, p, m):
    """(D', D_m) with D = D' + p^m D_m for the ladder 1 < 2 < ... < m"""
    return p_div_decompose(D, range(1, m + 1), p).split_top()


def _multiplicity(D):
    return ModulusDivisor.coerce(D).origin_multiplicity()


def twisted_bound(p, q, D, E, m, side=POLE):
    """Lowest weight of Ω^q_m(D, E) (pole side) or Ω^q_m(-D, -E) (zero side) at level one

    Pole side: Ω^q(log D)(⌈D/p^m⌉ - ⌈D/p^m⌉_red + E).
    Zero side: Ω^q(log D)(-⌈D/p^m⌉ - E).
    """
    a, b = _multiplicity(D), _multiplicity(E)
    c = PAdicArithmetic.ceil_div(a, p ** m)
    log = a > 0
    if side == POLE:
        bound = -(c - (1 if c > 0 else 0) + b)
    elif side == ZERO:
        bound = c + b
    else:
        raise ValidationError(f"Side must be {POLE!r} or {ZERO!r}, got {side!r}")
    if q == 1 and not log:
        bound += 1
    return bound


def twisted_support_space(p, q, D, E, m, window, side=POLE):
    level = PrimeContext(p, 1)
    return SupportSpaces.at_least(level, window.with_degree(q), twisted_bound(p, q, D, E, m, side))


def pole_space(ctx, q, D, window):
    """W_nΩ^q_{(X,D)} = Fil^p_r W_nΩ^q for D = r·{0}"""
    return window_space(FiltrationId(FilKind.FILP, _multiplicity(D), q, ctx), window)


def pole_window_space(ctx, q, r, window):
    """Fil^p_r window module without the pole-range check (for dilated windows)"""
    return FiltrationSpaces.window_space(FiltrationId(FilKind.FILP, r, q, ctx), window)


def check_pole_window(D, window):
    r = _multiplicity(D)
    if not window.covers(-r, 0):
        raise WindowTooSmall(f"Divisor {ModulusDivisor.coerce(D)} needs a window covering [{-r}, 0], got {window}")


def zero_space(ctx, q, D, window):
    """W_nΩ^q_{(X,-D)}: the degree-q part of the dg ideal generated by W_n(I_D)"""
    window = window.with_degree(q)
    family = zero_generators(ctx, _multiplicity(D), q, window)
    return WindowModule.from_forms(FormSpace(ctx, window), family.forms())


def direct_sum(space, first, second):
    """first ⊕ second inside a two-part FormSpace"""
    vectors = [space.column((x, None)) for x in first.forms()]
    vectors += [space.column((None, y)) for y in second.forms()]
    return WindowModule(space, vectors)


def mapped(module, op, target_space, name):
    return module.image(LinearMap(module.space, target_space, op, name=name))


def frobenius_power(k):
    return lambda x: FormOperators.iterate(FormOperators.frobenius, x, k)


def verschiebung_power(k):
    return lambda x: FormOperators.iterate(FormOperators.verschiebung, x, k)


def pline_power(k):
    return lambda x: FormOperators.iterate(FormOperators.pline, x, k)


@dataclass(frozen=True)
class StructuralPair:
    """B ⊆ Z inside one level-one window space"""
    B: WindowModule
    Z: WindowModule

    @property
    def graded_length(self):
        return self.Z.length - self.B.length


@dataclass(frozen=True)
class WindowQuotient:
    """module / sub with sub ⊆ module"""
    module: WindowModule
    sub: WindowModule

    @property
    def length(self):
        return self.module.quotient_length(self.sub)

    @property
    def space(self):
        return self.module.space


def _check_index(n):
    if not isinstance(n, int) or n < 0:
        raise ValidationError(f"Index n must be an integer >= 0, got {n!r}")


@timed()
def bn_zn_pole(p, n, q, D, window):
    """B_nΩ^q_{(X,D)} = F^(n-1)d(W_nΩ^(q-1)_{(X,D)}) and Z_nΩ^q_{(X,D)} = F^n(W_{n+1}Ω^q_{(X,D)})

    Both live in the level-one space on the window; the sources use the window
    divided by p^n (resp. p^(n-1)).
    """
    _check_index(n)
    r = _multiplicity(D)
    window = window.with_degree(q)
    level = PrimeContext(p, 1)
    target = FormSpace(level, window)
    source_window = window.dilate(Fraction(1, p ** n))
    source = pole_window_space(PrimeContext(p, n + 1), q, r, source_window)
    Z = mapped(source, frobenius_power(n), target, f"F^{n}")
    if q == 0 or n == 0:
        B = WindowModule.zero(target)
    else:
        below = pole_window_space(PrimeContext(p, n), 0, r, window.dilate(Fraction(1, p ** (n - 1))))
        B = mapped(below, lambda x: frobenius_power(n - 1)(FormOperators.d(x)), target, f"F^{n - 1}d")
    logger.debug(f"B_{n}, Z_{n} of {r}·{{0}} (p={p}, q={q}): lengths {B.length}, {Z.length}")
    return StructuralPair(B, Z)


def classical_bn_zn(p, n, q, window):
    return bn_zn_pole(p, n, q, 0, window)


def bn_zn_intersections(p, n, q, D, window):
    """j_*(B_n), j_*(Z_n) cut down to Ω^q_{(X,D)}"""
    _check_index(n)
    r = _multiplicity(D)
    window = window.with_degree(q)
    level = PrimeContext(p, 1)
    target = FormSpace(level, window)
    poles = pole_window_space(level, q, r, window)
    everything = WindowModule.full(FormSpace(PrimeContext(p, n + 1), window.dilate(Fraction(1, p ** n))))
    Z = mapped(everything, frobenius_power(n), target, f"F^{n}").intersection(poles)
    if q == 0 or n == 0:
        B = WindowModule.zero(target)
    else:
        below = WindowModule.full(FormSpace(PrimeContext(p, n), window.with_degree(0).dilate(Fraction(1, p ** (n - 1)))))
        B = mapped(below, lambda x: frobenius_power(n - 1)(FormOperators.d(x)), target,
                   f"F^{n - 1}d").intersection(poles)
    return StructuralPair(B, Z)


def _cartier_map(source, target):
    return LinearMap(source, target, FormOperators.cartier, name='C')


@timed()
def twisted_bz_spaces(p, q, D, E, n, window):
    """B^q_{n,n}(D, E) ⊆ Z^q_{n,n}(D, E) by pulling back along the Cartier operator

    Stage j works in Ω^•_{n-j}(D_low, D_high + p^j E) on the window divided
    by p^(n-j), where D = D_low + p^(n-j) D_high is the split of D at n - j.
    """
    _check_index(n)
    a, b = _multiplicity(D), _multiplicity(E)
    level = PrimeContext(p, 1)
    window = window.with_degree(q)
    k = min(PAdicArithmetic.valuation(a, p), n) if a else 0

    def stage_window(j):
        return window.dilate(Fraction(1, p ** (n - j)))

    first = stage_window(0)
    Z = twisted_support_space(p, q, a, b, n, first)
    B = WindowModule.zero(Z.space)
    for j in range(1, n + 1):
        m = n - j
        low = a if k <= m else 0
        high = a // p ** m if k > m else 0
        twist = high + p ** j * b
        here = stage_window(j)
        if q == 1:
            closed = twisted_support_space(p, 1, low, twist, m, here)
            exact = mapped(twisted_support_space(p, 0, low, twist, m, here.with_degree(0)),
                           FormOperators.d, closed.space, 'd')
        else:
            bound = twisted_bound(p, 0, low, twist, m)
            closed = SupportSpaces.space(level, here, lambda u, bound=bound: u >= bound and u % p == 0)
            exact = WindowModule.zero(closed.space)
        cartier = _cartier_map(closed.space, Z.space)
        B, Z = closed.preimage(cartier, B) + exact, closed.preimage(cartier, Z) + exact
        logger.debug(f"Cartier stage {j}/{n}: lengths B={B.length}, Z={Z.length}")
    return StructuralPair(B, Z)


def restricted_twist(p, n, D):
    """(D', pD_{n+1}) with D = D' + p^(n+1) D_{n+1}"""
    rest, top = split_top(D, p, n + 1)
    return rest, top.scaled(p)


def omega_bz_zero(p, n, q, D, window):
    """(Ω/B)^q_n and (Ω/Z)^(q-1)_n of the zero side, windows on the level-one forms

    (Ω/B)^q_n = {a in Ω^q_X : V^n(a) in W_{n+1}Ω^q_{(X,-D)}} / B_nΩ^q_X and
    (Ω/Z)^(q-1)_n = {b in Ω^(q-1)_X : dV^(n-1)(b) in W_nΩ^q_{(X,-D)}} / Z_nΩ^(q-1)_X.
    """
    _check_index(n)
    window = window.with_degree(q)
    level = PrimeContext(p, 1)
    regular = SupportSpaces.regular(level, window)
    if n == 0:
        omega_b = WindowQuotient(zero_space(level, q, D, window), WindowModule.zero(regular.space))
    else:
        upper = PrimeContext(p, n + 1)
        upper_window = window.dilate(Fraction(1, p ** n))
        zeros = zero_space(upper, q, D, upper_window)
        lift = LinearMap(regular.space, zeros.space, verschiebung_power(n), name=f"V^{n}")
        omega_b = WindowQuotient(regular.preimage(lift, zeros), classical_bn_zn(p, n, q, window).B)

    empty = FormSpace(level, window.with_degree(0))
    if q == 0 or n == 0:
        omega_z = WindowQuotient(WindowModule.zero(empty), WindowModule.zero(empty))
    else:
        functions = SupportSpaces.regular(level, window.with_degree(0))
        middle = PrimeContext(p, n)
        zeros = zero_space(middle, 1, D, window.dilate(Fraction(1, p ** (n - 1))))
        lift = LinearMap(functions.space, zeros.space,
                         lambda b: FormOperators.d(verschiebung_power(n - 1)(b)), name=f"dV^{n - 1}")
        omega_z = WindowQuotient(functions.preimage(lift, zeros), classical_bn_zn(p, n, 0, window).Z)
    return omega_b, omega_z


def annihilated_by_pline(p, n, q, D, window):
    """{α in Ω^q_X : p̲^n(α) in W_{n+1}Ω^q_{(X,-D)}} on a window of integer weights"""
    window = window.with_degree(q)
    level = PrimeContext(p, 1)
    regular = SupportSpaces.regular(level, window)
    zeros = zero_space(PrimeContext(p, n + 1), q, D, window)
    lift = LinearMap(regular.space, zeros.space, pline_power(n), name=f"p^{n}")
    return regular.preimage(lift, zeros)


def product_forms(left, right):
    """All nonzero products of generators of two window modules"""
    products = []
    for x in left.forms():
        for y in right.forms():
            product = FormArithmetic.mul(x, y)
            if not product.is_zero():
                products.append(product)
    return products


__all__ = [
    'POLE', 'ZERO', 'p_div_decompose', 'split_top', 'twisted_bound', 'twisted_support_space',
    'pole_space', 'pole_window_space', 'check_pole_window', 'zero_space', 'direct_sum', 'mapped',
    'frobenius_power', 'verschiebung_power', 'pline_power', 'StructuralPair', 'WindowQuotient',
    'bn_zn_pole', 'classical_bn_zn', 'bn_zn_intersections', 'twisted_bz_spaces', 'restricted_twist',
    'omega_bz_zero', 'annihilated_by_pline', 'product_forms',
]
