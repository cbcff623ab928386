# drw_forms/utils.py - Normal-form arithmetic and operators
import logging
from fractions import Fraction

from core.decorators import same_context
from core.exceptions import ContextMismatch, DegreeError, NotInImage, ValidationError
from core.utils import PAdicArithmetic, WeightCalculator
from core.validators import validate_unit_scalar
from drw_forms.models import NormalForm, make_form

logger = logging.getLogger(__name__)


class WeightValues:
    """Forms as weight -> value maps

    A 0-form is u -> A(u) in p^s(u) Z/p^n (head b gives b, V^s(c[t]^j) gives p^s c).
    A 1-form is u -> B(u) mod p^(n - s(u)) (dlog part a gives a, dV^s(c[t]^j) gives j c).
    Products become convolutions and d becomes A(u) -> u A(u).
    """

    @staticmethod
    def of(x):
        p, n = x.ctx.p, x.ctx.n
        values = {}
        for (s, j), c in x.coeffs.items():
            u = Fraction(j, p ** s)
            if x.q == 0:
                values[u] = (p ** s * c) % p ** n
            else:
                values[u] = c if s == 0 else (j * c) % p ** (n - s)
        return values

    @staticmethod
    def to_form(ctx, q, values):
        p, n = ctx.p, ctx.n
        coeffs = {}
        for u, value in values.items():
            s, j = WeightCalculator.key(p, u)
            if q == 0:
                value %= p ** n
                if value % p ** min(s, n):
                    raise ValidationError(f"Value {value} at weight {u} is not divisible by p^{s}")
                if s >= n:
                    continue
                coeffs[(s, j)] = value // p ** s
            else:
                if s >= n:
                    continue
                modulus = p ** (n - s)
                value %= modulus
                coeffs[(s, j)] = value if s == 0 else value * PAdicArithmetic.inverse(j % modulus, modulus)
        return make_form(ctx, q, coeffs)


class FormArithmetic:
    """Module operations on normal forms"""

    @staticmethod
    @same_context
    def add(x, y):
        coeffs = x.coeffs
        for key, c in y.coeffs.items():
            coeffs[key] = coeffs.get(key, 0) + c
        return make_form(x.ctx, x.q, coeffs)

    @staticmethod
    def neg(x):
        return make_form(x.ctx, x.q, {key: -c for key, c in x.coeffs.items()})

    @classmethod
    def sub(cls, x, y):
        return cls.add(x, cls.neg(y))

    @staticmethod
    def scale(x, c):
        """Multiplication by an integer (an element of W_n(F_p))"""
        return make_form(x.ctx, x.q, {key: c * v for key, v in x.coeffs.items()})

    @staticmethod
    def mul0(x, y):
        """0-form times 0-form"""
        if x.ctx != y.ctx:
            raise ContextMismatch(f"Context mismatch: {x.ctx} vs {y.ctx}")
        if x.q or y.q:
            raise DegreeError("mul0 expects two 0-forms")
        modulus = x.ctx.modulus
        product = {}
        for u, a in WeightValues.of(x).items():
            for v, b in WeightValues.of(y).items():
                product[u + v] = (product.get(u + v, 0) + a * b) % modulus
        return WeightValues.to_form(x.ctx, 0, product)

    @staticmethod
    def mul01(a, w):
        """0-form acting on a 1-form"""
        if a.ctx != w.ctx:
            raise ContextMismatch(f"Context mismatch: {a.ctx} vs {w.ctx}")
        if a.q != 0 or w.q != 1:
            raise DegreeError("mul01 expects a 0-form and a 1-form")
        product = {}
        for u, value_a in WeightValues.of(a).items():
            for v, value_w in WeightValues.of(w).items():
                product[u + v] = product.get(u + v, 0) + value_a * value_w
        return WeightValues.to_form(a.ctx, 1, product)

    @classmethod
    def mul(cls, x, y):
        if x.q == 0 and y.q == 0:
            return cls.mul0(x, y)
        if x.q == 0 and y.q == 1:
            return cls.mul01(x, y)
        if x.q == 1 and y.q == 0:
            return cls.mul01(y, x)
        raise DegreeError("The product of two 1-forms lives in degree 2, which is zero in dimension 1")


class FormOperators:
    """F, V, R, p-underline, d, residue and the Cartier operators"""

    @staticmethod
    def _shifted(x, level, transform):
        ctx = x.ctx.at_level(level)
        values = {}
        for u, value in WeightValues.of(x).items():
            new_u, new_value = transform(u, value)
            values[new_u] = values.get(new_u, 0) + new_value
        return WeightValues.to_form(ctx, x.q, values)

    @classmethod
    def frobenius(cls, x):
        """F: level n+1 -> n"""
        if x.ctx.n < 2:
            raise ValidationError("F needs a form of level >= 2")
        p = x.ctx.p
        return cls._shifted(x, x.ctx.n - 1, lambda u, value: (p * u, value))

    @classmethod
    def verschiebung(cls, x):
        """V: level n -> n+1"""
        p = x.ctx.p
        return cls._shifted(x, x.ctx.n + 1, lambda u, value: (u / p, p * value))

    @classmethod
    def restriction(cls, x):
        """R: level n+1 -> n"""
        if x.ctx.n < 2:
            raise ValidationError("R needs a form of level >= 2")
        return cls._shifted(x, x.ctx.n - 1, lambda u, value: (u, value))

    @classmethod
    def pline(cls, x):
        """p-underline: lift one level and multiply by p"""
        p = x.ctx.p
        return cls._shifted(x, x.ctx.n + 1, lambda u, value: (u, p * value))

    @classmethod
    def iterate(cls, op, x, times):
        for _ in range(times):
            x = op(x)
        return x

    @staticmethod
    def d(x):
        """d: 0-forms -> 1-forms; d(b[t]^i) = i b [t]^i dlog t, d V^s(c[t]^j) = dV^s(c[t]^j)"""
        if x.q != 0:
            raise DegreeError("d of a 1-form lands in degree 2, which is zero in dimension 1")
        coeffs = {}
        for (s, j), c in x.coeffs.items():
            coeffs[(s, j)] = j * c if s == 0 else c
        return make_form(x.ctx, 1, coeffs)

    @staticmethod
    def residue(w):
        """dlog coefficient at exponent 0"""
        if w.q != 1:
            raise DegreeError("residue is defined on 1-forms")
        return w.coeff((0, 0)) % w.ctx.modulus

    @staticmethod
    def cartier(x):
        """C(F(a)) = R(a), same level as the input"""
        p, n = x.ctx.p, x.ctx.n
        values = {}
        for w, value in WeightValues.of(x).items():
            u = w / p
            if x.q == 0:
                s = min(WeightCalculator.depth(p, u), n)
                if value % p ** s:
                    raise NotInImage(f"Value {value} at weight {w} is not in the image of F")
            values[u] = value
        return WeightValues.to_form(x.ctx, x.q, values)

    @classmethod
    def inv_cartier(cls, x, window=None):
        """A representative of C^{-1}(x) and the dV^{n-1} generators it is defined modulo"""
        p = x.ctx.p
        representative = WeightValues.to_form(
            x.ctx, x.q, {p * u: value for u, value in WeightValues.of(x).items()})
        ambiguity = []
        if x.q == 1 and window is not None:
            ambiguity = FormConstructors.dv_top_generators(x.ctx, window.min_exp, window.max_exp)
        return representative, ambiguity


class FormConstructors:
    """Teichmüller lifts, dlog monomials and basis elements"""

    @staticmethod
    def teich_form(ctx, c, i):
        """[c t^i] as a 0-form"""
        return make_form(ctx, 0, {(0, i): PAdicArithmetic.teichmuller(c, ctx.p, ctx.n)})

    @staticmethod
    def dlog_monomial(ctx, c, i):
        """dlog(c t^i) = i dlog t"""
        validate_unit_scalar(c, ctx.p)
        return make_form(ctx, 1, {(0, 0): i})

    @classmethod
    def dlog_t(cls, ctx):
        return cls.dlog_monomial(ctx, 1, 1)

    @staticmethod
    def basis_form(ctx, q, key):
        return make_form(ctx, q, {key: 1})

    @staticmethod
    def constant(ctx, c):
        return make_form(ctx, 0, {(0, 0): c})

    @staticmethod
    def basis_at_weight(ctx, q, weight):
        """The basis element of weight u (None if u is too deep for this level)"""
        key = WeightCalculator.key(ctx.p, weight)
        if key[0] >= ctx.n:
            return None
        return make_form(ctx, q, {key: 1})

    @staticmethod
    def dv_top_generators(ctx, low, high):
        """d V^{n-1}([t]^e) for every weight e/p^(n-1) in [low, high]"""
        p, n = ctx.p, ctx.n
        scale = p ** (n - 1)
        generators = []
        for e in range(PAdicArithmetic.ceil_fraction(Fraction(low) * scale),
                       PAdicArithmetic.floor_fraction(Fraction(high) * scale) + 1):
            if e == 0:
                continue
            base = FormConstructors.basis_form(ctx.at_level(1), 0, (0, e))
            lifted = FormOperators.iterate(FormOperators.verschiebung, base, n - 1)
            generator = FormOperators.d(lifted)
            if not generator.is_zero():
                generators.append(generator)
        return generators


class FormPrinter:
    """Render forms in the element-expression grammar"""

    @staticmethod
    def render(x):
        parts = []
        for (s, j), c in x.items():
            if x.q == 0:
                if s == 0:
                    parts.append(f"{c}*T(1,{j})")
                else:
                    parts.append(f"V^{s}({c}*T(1,{j}))")
            else:
                if s == 0:
                    parts.append(f"{c}*T(1,{j})*dlogt")
                else:
                    parts.append(f"dV^{s}({c}*T(1,{j}))")
        if not parts:
            return '0' if x.q == 0 else '0*dlogt'
        return ' + '.join(parts)


def nf_add(x, y):
    return FormArithmetic.add(x, y)


def nf_sub(x, y):
    return FormArithmetic.sub(x, y)


def nf_neg(x):
    return FormArithmetic.neg(x)


def nf_scale(x, c):
    return FormArithmetic.scale(x, c)


def nf_mul0(x, y):
    return FormArithmetic.mul0(x, y)


def nf_mul_01(a, w):
    return FormArithmetic.mul01(a, w)


def nf_mul(x, y):
    return FormArithmetic.mul(x, y)


def nf_F(x):
    return FormOperators.frobenius(x)


def nf_V(x):
    return FormOperators.verschiebung(x)


def nf_R(x):
    return FormOperators.restriction(x)


def nf_pline(x):
    return FormOperators.pline(x)


def nf_d(x):
    return FormOperators.d(x)


def residue(w):
    return FormOperators.residue(w)


def cartier(x):
    return FormOperators.cartier(x)


def inv_cartier(x, window=None):
    return FormOperators.inv_cartier(x, window)


teich_form = FormConstructors.teich_form
dlog_monomial = FormConstructors.dlog_monomial
dlog_t = FormConstructors.dlog_t
basis_form = FormConstructors.basis_form
