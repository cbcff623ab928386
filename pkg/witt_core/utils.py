# witt_core/utils.py - Witt vector arithmetic and the ghost oracle
import logging

from core.decorators import timed
from core.exceptions import ContextMismatch, ValidationError
from core.utils import PAdicArithmetic
from witt_core.managers import MAX_LEVEL, universal_polys
from witt_core.models import LaurentPoly, WittVector

logger = logging.getLogger(__name__)


def _as_poly(value, modulus):
    if isinstance(value, LaurentPoly):
        return value
    return LaurentPoly.constant(value, modulus)


class ScalarWitt:
    """W_n(F_p) = Z/p^n"""

    @staticmethod
    def to_integer(ctx, digits):
        """sum_k p^k omega(a_k) mod p^n"""
        p, n = ctx.p, ctx.n
        total = 0
        for k, digit in enumerate(digits):
            total += p ** k * PAdicArithmetic.teichmuller(digit, p, n)
        return total % ctx.modulus

    @staticmethod
    def from_integer(ctx, value):
        """Coordinates (a_0, ..., a_{n-1}) in F_p of value in Z/p^n"""
        p, n = ctx.p, ctx.n
        digits = []
        value %= ctx.modulus
        for k in range(n):
            level = n - k
            digit = value % p
            digits.append(digit)
            value = ((value - PAdicArithmetic.teichmuller(digit, p, level)) % p ** level) // p
        return digits

    @classmethod
    def vector(cls, ctx, value):
        return WittVector(ctx, tuple(LaurentPoly.constant(d, ctx.p) for d in cls.from_integer(ctx, value)))

    @classmethod
    def integer_of(cls, a):
        return cls.to_integer(a.ctx, [c.constant_term() for c in a.coords])


class UniversalEvaluator:
    """Evaluate cached universal polynomials on F_p[t, 1/t] coordinates"""

    def __init__(self, xs, ys=()):
        self.xs = xs
        self.ys = ys
        self.modulus = xs[0].modulus
        self._powers = {}

    def _power(self, index, exponent):
        key = (index, exponent)
        if key not in self._powers:
            half = MAX_LEVEL + 2
            base = self.xs[index] if index < half else self.ys[index - half]
            self._powers[key] = base ** exponent
        return self._powers[key]

    def evaluate(self, terms):
        total = LaurentPoly.zero(self.modulus)
        for monom, coeff in terms:
            value = LaurentPoly.constant(coeff, self.modulus)
            for index, exponent in enumerate(monom):
                if exponent:
                    value = value * self._power(index, exponent)
                    if value.is_zero():
                        break
            total = total + value
        return total


class WittArithmetic:
    """Ring operations and operators on WittVector"""

    @staticmethod
    def _check_pair(a, b):
        if a.ctx != b.ctx:
            raise ContextMismatch(f"Context mismatch: {a.ctx} vs {b.ctx}")
        if a.coefficient_modulus != b.coefficient_modulus:
            raise ContextMismatch("Witt vectors over different coefficient rings")

    @staticmethod
    def zero(ctx, modulus=None):
        modulus = ctx.p if modulus is None else modulus
        return WittVector(ctx, tuple(LaurentPoly.zero(modulus) for _ in range(ctx.n)))

    @staticmethod
    def one(ctx):
        return ScalarWitt.vector(ctx, 1)

    @staticmethod
    def from_integer(ctx, value):
        return ScalarWitt.vector(ctx, value)

    @staticmethod
    def teich(ctx, value):
        """[a] = (a, 0, ..., 0)"""
        head = _as_poly(value, ctx.p)
        zero = LaurentPoly.zero(head.modulus)
        return WittVector(ctx, (head,) + tuple(zero for _ in range(ctx.n - 1)))

    @classmethod
    def _apply(cls, kind, a, b):
        ctx = a.ctx
        coords = []
        evaluator = UniversalEvaluator(a.coords, b.coords)
        for i in range(ctx.n):
            coords.append(evaluator.evaluate(universal_polys.reduced_terms(ctx.p, i, kind)))
        return WittVector(ctx, tuple(coords))

    @classmethod
    @timed()
    def add(cls, a, b):
        cls._check_pair(a, b)
        if a.is_lift:
            return GhostOracle.add(a, b)
        if a.is_scalar() and b.is_scalar():
            return ScalarWitt.vector(a.ctx, ScalarWitt.integer_of(a) + ScalarWitt.integer_of(b))
        return cls._apply('S', a, b)

    @classmethod
    @timed()
    def multiply(cls, a, b):
        cls._check_pair(a, b)
        if a.is_lift:
            return GhostOracle.multiply(a, b)
        if a.is_scalar() and b.is_scalar():
            return ScalarWitt.vector(a.ctx, ScalarWitt.integer_of(a) * ScalarWitt.integer_of(b))
        return cls._apply('P', a, b)

    @classmethod
    def negate(cls, a):
        if a.is_lift:
            return WittVector(a.ctx, tuple(-c for c in a.coords))
        return cls.multiply(cls.from_integer(a.ctx, -1), a)

    @classmethod
    def scale(cls, a, c):
        """c * a for an integer c"""
        return cls.multiply(cls.from_integer(a.ctx, c), a)

    @staticmethod
    def verschiebung(a):
        """V: W_n -> W_{n+1}, prepend a zero"""
        zero = LaurentPoly.zero(a.coefficient_modulus)
        return WittVector(a.ctx.at_level(a.ctx.n + 1), (zero,) + a.coords)

    @staticmethod
    def restriction(a):
        """R: W_{n+1} -> W_n, drop the last coordinate"""
        if a.ctx.n < 2:
            raise ValidationError("Restriction needs length >= 2")
        return WittVector(a.ctx.at_level(a.ctx.n - 1), a.coords[:-1])

    @classmethod
    def frobenius(cls, a):
        """F: W_{n+1} -> W_n through the universal F_i"""
        if a.ctx.n < 2:
            raise ValidationError("Frobenius needs length >= 2")
        target = a.ctx.at_level(a.ctx.n - 1)
        if a.is_lift:
            return GhostOracle.frobenius(a)
        evaluator = UniversalEvaluator(a.coords)
        coords = tuple(evaluator.evaluate(universal_polys.reduced_terms(a.ctx.p, i, 'F'))
                       for i in range(target.n))
        return WittVector(target, coords)

    @classmethod
    def from_teichmuller_sum(cls, ctx, heads):
        """sum_i V^i([a_i]) computed with ring addition"""
        total = cls.zero(ctx)
        for i, head in enumerate(heads):
            term = cls.teich(ctx.at_level(ctx.n - i), head)
            for _ in range(i):
                term = cls.verschiebung(term)
            total = cls.add(total, term)
        return total


class GhostOracle:
    """Lift to Z[t, 1/t], compute in ghost components, invert exactly"""

    @staticmethod
    def ghost_components(a):
        """(w_0(a), ..., w_{n-1}(a)) for a p-torsion-free coefficient ring"""
        if not a.is_lift:
            raise ValidationError("Ghost components need integer coefficients; lift first")
        p = a.ctx.p
        ghosts = []
        for i in range(a.ctx.n):
            w = LaurentPoly.zero(0)
            for j in range(i + 1):
                w = w + (a.coords[j] ** (p ** (i - j))).scale(p ** j)
            ghosts.append(w)
        return tuple(ghosts)

    @staticmethod
    def from_ghosts(ctx, ghosts):
        """Solve the ghost map for integral coordinates"""
        p = ctx.p
        coords = []
        for i in range(ctx.n):
            rest = ghosts[i]
            for j, c in enumerate(coords):
                rest = rest - (c ** (p ** (i - j))).scale(p ** j)
            coords.append(rest.exquo(p ** i))
        return WittVector(ctx, tuple(coords))

    @staticmethod
    def lift(a):
        return WittVector(a.ctx, tuple(c.lift() for c in a.coords))

    @staticmethod
    def reduce(a, modulus):
        return WittVector(a.ctx, tuple(c.reduce(modulus) for c in a.coords))

    @classmethod
    def add(cls, a, b):
        ga, gb = cls.ghost_components(a), cls.ghost_components(b)
        return cls.from_ghosts(a.ctx, [x + y for x, y in zip(ga, gb)])

    @classmethod
    def multiply(cls, a, b):
        ga, gb = cls.ghost_components(a), cls.ghost_components(b)
        return cls.from_ghosts(a.ctx, [x * y for x, y in zip(ga, gb)])

    @classmethod
    def frobenius(cls, a):
        ghosts = cls.ghost_components(a)
        return cls.from_ghosts(a.ctx.at_level(a.ctx.n - 1), ghosts[1:])

    @classmethod
    def checked(cls, op, *vectors):
        """Run op on lifts and reduce mod p: the oracle for F_p[t, 1/t] arithmetic"""
        p = vectors[0].ctx.p
        lifted = [cls.lift(v) for v in vectors]
        result = {'add': cls.add, 'mul': cls.multiply, 'frobenius': cls.frobenius}[op](*lifted)
        return cls.reduce(result, p)


def build_universal_polys(p, max_level):
    """S_i, P_i, F_i for all i <= max_level"""
    if max_level < 0:
        raise ValidationError(f"max_level must be >= 0, got {max_level}")
    return universal_polys.build(p, max_level)


def wadd(a, b):
    return WittArithmetic.add(a, b)


def wmul(a, b):
    return WittArithmetic.multiply(a, b)


def teich(ctx, value):
    return WittArithmetic.teich(ctx, value)


def V(a):
    return WittArithmetic.verschiebung(a)


def F(a):
    return WittArithmetic.frobenius(a)


def R(a):
    return WittArithmetic.restriction(a)


def ghost_oracle(a):
    return GhostOracle.ghost_components(a)
