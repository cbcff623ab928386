# drw_forms/models.py - Normal forms of W_n Omega^0 and W_n Omega^1 over F_p[t, 1/t]
from dataclasses import dataclass
from fractions import Fraction

from core.exceptions import ValidationError
from core.utils import WeightCalculator
from core.validators import validate_degree


class NormalForm:
    """Finite-support coefficient map (s, j) -> Z/p^(n-s)

    Key (0, i) is the head b[t]^i (degree 0) or the log part a[t]^i dlog t
    (degree 1). Key (s, j) with s >= 1 and p not dividing j is V^s(c[t]^j)
    resp. dV^s(c[t]^j).
    """

    __slots__ = ('ctx', 'q', '_coeffs', '_hash')

    def __init__(self, ctx, q, coeffs=None):
        validate_degree(q)
        self.ctx = ctx
        self.q = q
        p, n = ctx.p, ctx.n
        cleaned = {}
        for (s, j), c in (coeffs or {}).items():
            if not 0 <= s < n:
                raise ValidationError(f"Depth {s} out of range for n={n}")
            if s and j % p == 0:
                raise ValidationError(f"Key ({s}, {j}) is not normalized: p divides j")
            c %= p ** (n - s)
            if c:
                cleaned[(s, j)] = c
        self._coeffs = cleaned
        self._hash = None

    @classmethod
    def zero(cls, ctx, q):
        return cls(ctx, q, {})

    @property
    def coeffs(self):
        return dict(self._coeffs)

    def items(self):
        return sorted(self._coeffs.items(), key=lambda item: (self.weight(item[0]), item[0]))

    def coeff(self, key):
        return self._coeffs.get(key, 0)

    def keys(self):
        return set(self._coeffs)

    def modulus(self, key):
        return self.ctx.p ** (self.ctx.n - key[0])

    def weight(self, key):
        return WeightCalculator.weight(self.ctx.p, key)

    def weights(self):
        return sorted(self.weight(key) for key in self._coeffs)

    @property
    def head(self):
        """i -> b for degree 0, i -> a (dlog part) for degree 1"""
        return {j: c for (s, j), c in self._coeffs.items() if s == 0}

    @property
    def deep(self):
        return {(s, j): c for (s, j), c in self._coeffs.items() if s > 0}

    dlog = head
    dv = deep

    def is_zero(self):
        return not self._coeffs

    def __add__(self, other):
        from drw_forms.utils import FormArithmetic
        return FormArithmetic.add(self, other)

    def __sub__(self, other):
        from drw_forms.utils import FormArithmetic
        return FormArithmetic.sub(self, other)

    def __neg__(self):
        from drw_forms.utils import FormArithmetic
        return FormArithmetic.neg(self)

    def __mul__(self, other):
        from drw_forms.utils import FormArithmetic
        if isinstance(other, int):
            return FormArithmetic.scale(self, other)
        return FormArithmetic.mul(self, other)

    def __rmul__(self, other):
        from drw_forms.utils import FormArithmetic
        if isinstance(other, int):
            return FormArithmetic.scale(self, other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, NormalForm):
            return NotImplemented
        return self.ctx == other.ctx and self.q == other.q and self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, self.q, frozenset(self._coeffs.items())))
        return self._hash

    def __repr__(self):
        from drw_forms.utils import FormPrinter
        return f"<{type(self).__name__} {self.ctx} {FormPrinter.render(self)}>"


class NormalForm0(NormalForm):
    def __init__(self, ctx, coeffs=None):
        super().__init__(ctx, 0, coeffs)


class NormalForm1(NormalForm):
    def __init__(self, ctx, coeffs=None):
        super().__init__(ctx, 1, coeffs)


def make_form(ctx, q, coeffs=None):
    return NormalForm0(ctx, coeffs) if q == 0 else NormalForm1(ctx, coeffs)


@dataclass(frozen=True)
class SupportProfile:
    """Exponent ranges of a normal form"""
    head_range: tuple
    deep_ranges: dict
    min_weight: Fraction
    max_weight: Fraction
    pole_order: Fraction

    @classmethod
    def of(cls, form):
        head = sorted(form.head)
        deep = {}
        for (s, j) in form.deep:
            low, high = deep.get(s, (j, j))
            deep[s] = (min(low, j), max(high, j))
        weights = form.weights()
        if not weights:
            return cls(None, {}, Fraction(0), Fraction(0), Fraction(0))
        return cls(
            (head[0], head[-1]) if head else None,
            deep,
            weights[0],
            weights[-1],
            max(Fraction(0), -weights[0]),
        )

    def is_regular_support(self, q):
        """Support inside the regular weights (>= 0 for q=0, > 0 for q=1)"""
        if self.head_range is None and not self.deep_ranges:
            return True
        return self.min_weight > 0 if q == 1 else self.min_weight >= 0
