# witt_core/models.py - Prime contexts, Laurent polynomials and Witt vectors
from dataclasses import dataclass

from core.exceptions import ContextMismatch, ValidationError
from core.validators import validate_length, validate_prime


@dataclass(frozen=True)
class PrimeContext:
    """The prime p and truncation length n"""
    p: int
    n: int

    def __post_init__(self):
        validate_prime(self.p)
        validate_length(self.n)

    @property
    def modulus(self):
        return self.p ** self.n

    def at_level(self, n):
        return PrimeContext(self.p, n)

    def __str__(self):
        return f"(p={self.p}, n={self.n})"


class LaurentPoly:
    """Sparse Laurent polynomial over F_p (modulus p) or over the integers (modulus 0)"""

    __slots__ = ('_coeffs', 'modulus', '_hash')

    def __init__(self, coeffs=None, modulus=0):
        self.modulus = modulus
        cleaned = {}
        for exponent, coeff in (coeffs or {}).items():
            if modulus:
                coeff %= modulus
            if coeff:
                cleaned[int(exponent)] = coeff
        self._coeffs = cleaned
        self._hash = None

    @classmethod
    def zero(cls, modulus=0):
        return cls({}, modulus)

    @classmethod
    def constant(cls, c, modulus=0):
        return cls({0: c}, modulus)

    @classmethod
    def monomial(cls, c, exponent, modulus=0):
        return cls({exponent: c}, modulus)

    @property
    def coeffs(self):
        return dict(self._coeffs)

    def items(self):
        return sorted(self._coeffs.items())

    def coeff(self, exponent):
        return self._coeffs.get(exponent, 0)

    def is_zero(self):
        return not self._coeffs

    def is_constant(self):
        return all(exponent == 0 for exponent in self._coeffs)

    def constant_term(self):
        return self._coeffs.get(0, 0)

    def valuation(self):
        """Smallest exponent, None for zero"""
        return min(self._coeffs) if self._coeffs else None

    def degree(self):
        return max(self._coeffs) if self._coeffs else None

    def _check(self, other):
        if self.modulus != other.modulus:
            raise ContextMismatch(f"Coefficient rings differ: mod {self.modulus} vs mod {other.modulus}")

    def _coerce(self, other):
        if isinstance(other, int):
            return LaurentPoly.constant(other, self.modulus)
        self._check(other)
        return other

    def __add__(self, other):
        if not isinstance(other, (LaurentPoly, int)):
            return NotImplemented
        other = self._coerce(other)
        result = dict(self._coeffs)
        for exponent, coeff in other._coeffs.items():
            result[exponent] = result.get(exponent, 0) + coeff
        return LaurentPoly(result, self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._coeffs.items()}, self.modulus)

    def __sub__(self, other):
        if not isinstance(other, (LaurentPoly, int)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        result = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                result[e1 + e2] = result.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(result, self.modulus)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            if len(self._coeffs) != 1:
                raise ValidationError("Only monomials can be inverted")
            (e, c), = self._coeffs.items()
            if self.modulus:
                inverse = pow(c, -1, self.modulus)
            elif c in (1, -1):
                inverse = c
            else:
                raise ValidationError(f"{c} is not a unit of the integers")
            return LaurentPoly({-e: inverse}, self.modulus) ** (-exponent)
        result = LaurentPoly.constant(1, self.modulus)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def scale(self, c):
        return LaurentPoly({e: c * v for e, v in self._coeffs.items()}, self.modulus)

    def exquo(self, c):
        """Exact division of integer coefficients"""
        result = {}
        for e, v in self._coeffs.items():
            if v % c:
                raise ValidationError(f"Coefficient {v} is not divisible by {c}")
            result[e] = v // c
        return LaurentPoly(result, self.modulus)

    def reduce(self, modulus):
        return LaurentPoly(self._coeffs, modulus)

    def lift(self):
        """Integer representatives of the coefficients"""
        return LaurentPoly(self._coeffs, 0)

    def frobenius(self):
        """Absolute Frobenius a -> a^p over F_p"""
        if not self.modulus:
            raise ValidationError("Frobenius substitution needs an F_p coefficient ring")
        p = self.modulus
        return LaurentPoly({p * e: c for e, c in self._coeffs.items()}, p)

    def substitute_power(self, k):
        """t -> t^k"""
        return LaurentPoly({k * e: c for e, c in self._coeffs.items()}, self.modulus)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self.modulus)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.modulus == other.modulus and self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.modulus, frozenset(self._coeffs.items())))
        return self._hash

    def __bool__(self):
        return bool(self._coeffs)

    def __repr__(self):
        if not self._coeffs:
            return '0'
        parts = []
        for e, c in self.items():
            parts.append(f"{c}" if e == 0 else f"{c}*t^{e}")
        return ' + '.join(parts)


@dataclass(frozen=True)
class UniversalPolys:
    """Witt addition, multiplication and Frobenius polynomials at one level"""
    p: int
    level: int
    S: object
    P: object
    F: object

    def term_counts(self):
        return {'S': len(self.S), 'P': len(self.P), 'F': len(self.F)}


@dataclass(frozen=True)
class WittVector:
    """Truncated p-typical Witt vector (a_0, ..., a_{n-1})"""
    ctx: PrimeContext
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.ctx.n:
            raise ValidationError(f"Expected {self.ctx.n} coordinates, got {len(self.coords)}")
        moduli = {c.modulus for c in self.coords}
        if len(moduli) > 1:
            raise ContextMismatch("Coordinates live in different coefficient rings")

    @property
    def coefficient_modulus(self):
        return self.coords[0].modulus

    @property
    def is_lift(self):
        return self.coefficient_modulus == 0

    def is_scalar(self):
        return all(c.is_constant() for c in self.coords)

    def is_zero(self):
        return all(c.is_zero() for c in self.coords)

    def __add__(self, other):
        from witt_core.utils import WittArithmetic
        return WittArithmetic.add(self, other)

    def __sub__(self, other):
        from witt_core.utils import WittArithmetic
        return WittArithmetic.add(self, WittArithmetic.negate(other))

    def __neg__(self):
        from witt_core.utils import WittArithmetic
        return WittArithmetic.negate(self)

    def __mul__(self, other):
        from witt_core.utils import WittArithmetic
        return WittArithmetic.multiply(self, other)

    def __repr__(self):
        inner = ', '.join(repr(c) for c in self.coords)
        return f"W{self.ctx.n}({inner})"
