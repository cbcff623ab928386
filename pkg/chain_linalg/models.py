# chain_linalg/models.py - Windows, coordinate spaces, linear maps and window modules
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from django.conf import settings

from core.exceptions import ContextMismatch, ResourceError, ValidationError, WindowTooSmall
from core.utils import WeightCalculator
from core.validators import validate_degree, validate_window_bounds
from drw_forms.models import make_form

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WindowSpec:
    """Degree q and weight bounds [min_exp, max_exp]"""
    q: int
    min_exp: Fraction
    max_exp: Fraction

    def __post_init__(self):
        validate_degree(self.q)
        object.__setattr__(self, 'min_exp', Fraction(self.min_exp))
        object.__setattr__(self, 'max_exp', Fraction(self.max_exp))
        validate_window_bounds(self.min_exp, self.max_exp)

    @classmethod
    def parse(cls, q, text):
        """'MIN:MAX'"""
        try:
            low, high = text.split(':')
            return cls(q, Fraction(low), Fraction(high))
        except ValueError:
            raise ValidationError(f"Window must look like MIN:MAX, got {text!r}") from None

    def keys(self, ctx):
        return WeightCalculator.keys_between(ctx.p, ctx.n, self.min_exp, self.max_exp)

    def contains_weight(self, weight):
        return self.min_exp <= weight <= self.max_exp

    def covers(self, low, high):
        return self.min_exp <= low and high <= self.max_exp

    def dilate(self, factor):
        """Multiply both bounds by a positive factor (p^k for F^k)"""
        return WindowSpec(self.q, self.min_exp * factor, self.max_exp * factor)

    def widen(self, guard):
        return WindowSpec(self.q, self.min_exp - guard, self.max_exp + guard)

    def with_degree(self, q):
        return WindowSpec(q, self.min_exp, self.max_exp)

    def with_bounds(self, low, high):
        return WindowSpec(self.q, low, high)

    def __str__(self):
        return f"q={self.q} [{self.min_exp}, {self.max_exp}]"


class FormSpace:
    """Direct sum of windowed coordinate spaces over one PrimeContext

    Coordinates are labelled (part, s, j). A coefficient c of modulus p^(n-s)
    is stored as p^s c in Z/p^n so every coordinate lives in one ring.
    """

    def __init__(self, ctx, windows):
        if not isinstance(windows, (tuple, list)):
            windows = (windows,)
        self.ctx = ctx
        self.windows = tuple(windows)
        labels = []
        for part, window in enumerate(self.windows):
            for s, j in window.keys(ctx):
                labels.append((part, s, j))
        if len(labels) > settings.DRWLAB_MAX_COORDINATES:
            raise ResourceError(f"Window space needs {len(labels)} coordinates, budget is "
                                f"{settings.DRWLAB_MAX_COORDINATES}")
        self.labels = tuple(labels)
        self.index = {label: row for row, label in enumerate(labels)}

    @property
    def p(self):
        return self.ctx.p

    @property
    def N(self):
        return self.ctx.n

    @property
    def modulus(self):
        return self.ctx.modulus

    def __len__(self):
        return len(self.labels)

    def __eq__(self, other):
        return isinstance(other, FormSpace) and self.ctx == other.ctx and self.windows == other.windows

    def __hash__(self):
        return hash((self.ctx, self.windows))

    def __repr__(self):
        return f"<FormSpace {self.ctx} {', '.join(str(w) for w in self.windows)}>"

    def scale_of(self, row):
        return self.p ** self.labels[row][1]

    def column(self, forms, clip=False):
        """Sparse embedded vector of a form (or a tuple of forms, one per part)"""
        if not isinstance(forms, (tuple, list)):
            forms = (forms,)
        if len(forms) != len(self.windows):
            raise ContextMismatch(f"Expected {len(self.windows)} components, got {len(forms)}")
        vector = {}
        for part, (form, window) in enumerate(zip(forms, self.windows)):
            if form is None:
                continue
            if form.ctx != self.ctx or form.q != window.q:
                raise ContextMismatch(f"Form {form.ctx} q={form.q} does not fit {self.ctx} {window}")
            for (s, j), c in form.coeffs.items():
                row = self.index.get((part, s, j))
                if row is None:
                    if clip:
                        continue
                    raise WindowTooSmall(f"Weight {Fraction(j, self.p ** s)} lies outside {window}")
                vector[row] = (self.p ** s * c) % self.modulus
        return vector

    def forms(self, vector):
        """Inverse of column"""
        coeffs = [{} for _ in self.windows]
        for row, value in vector.items():
            part, s, j = self.labels[row]
            if value % self.modulus:
                coeffs[part][(s, j)] = (value % self.modulus) // self.p ** s
        return tuple(make_form(self.ctx, window.q, c) for window, c in zip(self.windows, coeffs))

    def form(self, vector):
        forms = self.forms(vector)
        return forms[0] if len(forms) == 1 else forms

    def basis_vector(self, row):
        return {row: self.scale_of(row) % self.modulus}

    def weight_of(self, row):
        _, s, j = self.labels[row]
        return Fraction(j, self.p ** s)


class LinearMap:
    """Additive map between form spaces given by a form-level operation"""

    def __init__(self, source, target, op, clip=False, name=''):
        self.source = source
        self.target = target
        self.op = op
        self.clip = clip
        self.name = name or getattr(op, '__name__', 'map')

    @classmethod
    def from_forms(cls, source, target, op, clip=False, name=''):
        return cls(source, target, op, clip, name)

    def apply(self, vector):
        forms = self.source.forms(vector)
        result = self.op(forms[0] if len(forms) == 1 else forms)
        return self.target.column(result, clip=self.clip)

    def __repr__(self):
        return f"<LinearMap {self.name}: {self.source} -> {self.target}>"


@dataclass(frozen=True)
class SmithForm:
    """left * A * right = diag(divisors) over Z/modulus"""
    divisors: tuple
    left: tuple
    right: tuple
    modulus: int

    @property
    def rank(self):
        return len(self.divisors)


class WindowModule:
    """Subgroup of a FormSpace spanned by sparse generator vectors"""

    def __init__(self, space, generators=()):
        self.space = space
        modulus = space.modulus
        cleaned = []
        for vector in generators:
            reduced = {row: value % modulus for row, value in vector.items() if value % modulus}
            if reduced:
                cleaned.append(reduced)
        self.generators = tuple(cleaned)

    @classmethod
    def zero(cls, space):
        return cls(space, ())

    @classmethod
    def full(cls, space):
        return cls(space, [space.basis_vector(row) for row in range(len(space))])

    @classmethod
    def from_forms(cls, space, forms, clip=False):
        return cls(space, [space.column(form, clip=clip) for form in forms])

    def _check(self, other):
        if self.space != other.space:
            raise ContextMismatch(f"Ambient mismatch: {self.space} vs {other.space}")

    @cached_property
    def length(self):
        from chain_linalg.utils import ModuleAlgebra
        return ModuleAlgebra.length(self.space, self.generators)

    def __len__(self):
        return len(self.generators)

    def contains(self, vector):
        if isinstance(vector, dict):
            candidate = vector
        else:
            candidate = self.space.column(vector)
        return WindowModule(self.space, self.generators + (candidate,)).length == self.length

    def issubset(self, other):
        self._check(other)
        return (self + other).length == other.length

    def equals(self, other):
        self._check(other)
        total = (self + other).length
        return total == self.length and total == other.length

    def __add__(self, other):
        self._check(other)
        return WindowModule(self.space, self.generators + other.generators)

    def intersection(self, other):
        self._check(other)
        from chain_linalg.utils import ModuleAlgebra
        return ModuleAlgebra.intersection(self, other)

    def scaled(self, c):
        return WindowModule(self.space, [{row: c * value for row, value in g.items()} for g in self.generators])

    def image(self, linear_map):
        if linear_map.source != self.space:
            raise ContextMismatch(f"{linear_map} does not start at {self.space}")
        return WindowModule(linear_map.target, [linear_map.apply(g) for g in self.generators])

    def preimage(self, linear_map, target_module=None):
        """{x in self : f(x) in target_module} (target_module defaults to zero)"""
        from chain_linalg.utils import ModuleAlgebra
        if target_module is None:
            target_module = WindowModule.zero(linear_map.target)
        return ModuleAlgebra.preimage(self, linear_map, target_module)

    def kernel(self, linear_map):
        return self.preimage(linear_map)

    def quotient_length(self, sub):
        """length(self / (self ∩ sub))"""
        self._check(sub)
        return (self + sub).length - sub.length

    def clip(self, space):
        """Move generators into another space over the same ctx, dropping coordinates outside it"""
        vectors = []
        for g in self.generators:
            vectors.append(space.column(self.space.forms(g), clip=True))
        return WindowModule(space, vectors)

    def embed(self, space):
        """Move generators into a larger space (every coordinate must fit)"""
        return WindowModule(space, [space.column(self.space.forms(g)) for g in self.generators])

    def forms(self):
        return [self.space.form(g) for g in self.generators]

    def witness_outside(self, other):
        """A generator of self that is not in other, rendered, or None"""
        from drw_forms.utils import FormPrinter
        for g in self.generators:
            if not other.contains(g):
                forms = self.space.forms(g)
                return ' ; '.join(FormPrinter.render(f) for f in forms)
        return None

    def __repr__(self):
        return f"<WindowModule {len(self.generators)} generators in {self.space}>"
