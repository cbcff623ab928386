# filtrations/managers.py - Per-weight generator builders
import logging
from fractions import Fraction

from core.utils import PAdicArithmetic, WeightCalculator
from drw_forms.models import make_form
from drw_forms.utils import FormArithmetic, FormConstructors, FormOperators
from filtrations.models import FilKind, Generator

logger = logging.getLogger(__name__)

# Basis conditions on the weight w of the untwisted factor
BASES = {
    'regular0': (0, lambda w: w >= 0, False),
    'regular1': (1, lambda w: w > 0, False),
    'log1': (1, lambda w: w >= 0, False),
    'regular0_dlog': (0, lambda w: w >= 0, True),
}


def regular_base(q):
    return 'regular0' if q == 0 else 'regular1'


class GeneratorBuilder:
    """Generators of the filtration layers at a single weight u of W_n Omega^q

    Every layer is a sum of groups V^j([t]^i * M) with M a support-defined
    module at level n-j, so at weight u it is spanned by the elements
    V^j([t]^i e_w) with w = p^j u - i.
    """

    def __init__(self, ctx):
        self.ctx = ctx
        self.p = ctx.p
        self.n = ctx.n

    def at_level(self, n):
        return GeneratorBuilder(self.ctx.at_level(n))

    def twisted(self, j, i, u, base, recipe):
        """V^j([t]^i e_w), or None when e_w is not in the base module"""
        q, condition, with_dlog = BASES[base]
        w = self.p ** j * Fraction(u) - i
        if not condition(w):
            return None
        level = self.ctx.at_level(self.n - j)
        element = FormConstructors.basis_at_weight(level, q, w)
        if element is None:
            return None
        if i:
            element = FormArithmetic.mul(FormConstructors.teich_form(level, 1, i), element)
        if with_dlog:
            element = FormArithmetic.mul(element, FormConstructors.dlog_t(level))
        element = FormOperators.iterate(FormOperators.verschiebung, element, j)
        if element.is_zero():
            return None
        return Generator(element, recipe)

    def regular(self, q, u):
        found = self.twisted(0, 0, u, regular_base(q), f"regular{q}")
        return [found] if found else []

    def log_support(self, q, u):
        found = self.twisted(0, 0, u, 'regular0' if q == 0 else 'log1', f"log-support{q}")
        return [found] if found else []

    def log(self, r, q, u):
        """fil^log_r: V^j([t]^{i_j} W_{n-j}Omega^q_O(log)), i_j = ceil(-r/p^(n-1-j))"""
        base = 'regular0' if q == 0 else 'log1'
        found = []
        for j in range(self.n):
            i = PAdicArithmetic.ceil_div(-r, self.p ** (self.n - 1 - j))
            generator = self.twisted(j, i, u, base, f"fil^log_{r} V^{j}[t]^{i}")
            if generator:
                found.append(generator)
        return found

    def log_prime(self, r, q, u):
        """fil^log'_r = fil^log_r W_n(L) * W_n Omega^q_O"""
        if q == 0:
            return self.log(r, 0, u)
        found = []
        for j in range(self.n):
            i = PAdicArithmetic.ceil_div(-r, self.p ** (self.n - 1 - j))
            generator = self.twisted(j, i, u, 'regular1', f"fil^log'_{r} V^{j}[t]^{i}")
            if generator:
                found.append(generator)
        return found

    def _v_layer(self, r, q, u, m, producer):
        """V^{n-m} of a level-m layer at weight p^(n-m) u"""
        inner = self.at_level(m)
        shift = self.n - m
        found = []
        for generator in producer(inner, r, q, Fraction(u) * self.p ** shift):
            lifted = FormOperators.iterate(FormOperators.verschiebung, generator.form, shift)
            if not lifted.is_zero():
                found.append(Generator(lifted, f"V^{shift}({generator.recipe})"))
        return found

    def fil(self, r, q, u):
        """fil_r = fil^log_{r-1} + V^{n-m}(fil^log'_r W_m), m = min(v_p(r), n)"""
        if r == 0:
            return self.log_prime(0, q, u)
        found = self.log(r - 1, q, u)
        m = min(PAdicArithmetic.valuation(r, self.p), self.n)
        if m >= 1:
            found += self._v_layer(r, q, u, m, GeneratorBuilder.log_prime)
        return found

    def fil_cap(self, r, q, u):
        """Fil_r = fil_r + d(fil_r)"""
        found = self.fil(r, q, u)
        if q == 1:
            found += self.differentials(self.fil(r, 0, u))
        return found

    @staticmethod
    def differentials(generators):
        found = []
        for generator in generators:
            image = FormOperators.d(generator.form)
            if not image.is_zero():
                found.append(Generator(image, f"d({generator.recipe})"))
        return found

    def presentation(self, R, q, u):
        """H^q_R: the three generator clauses of the presentation of Fil^p"""
        base = regular_base(q)
        found = []
        for j in range(self.n):
            i = PAdicArithmetic.ceil_div(1 - R, self.p ** (self.n - 1 - j))
            generator = self.twisted(j, i, u, base, f"H_{R} V^{j}[t]^{i}α")
            if generator:
                found.append(generator)
            if q == 1:
                generator = self.twisted(j, i, u, 'regular0_dlog', f"H_{R} V^{j}[t]^{i}dlog t β")
                if generator:
                    found.append(generator)
        m = min(PAdicArithmetic.valuation(R, self.p), self.n) if R else 0
        if m >= 1:
            for j in range(self.n - m, self.n):
                i = -R // self.p ** (self.n - 1 - j)
                generator = self.twisted(j, i, u, base, f"H_{R} V^{j}[t]^{i}α (v_p={m})")
                if generator:
                    found.append(generator)
        return found

    def filp(self, r, q, u):
        """Fil^p_r = sum_s p^s (H^q_{rp^s} + d H^{q-1}_{rp^s}), Fil^p_0 = regular"""
        if r == 0:
            return self.regular(q, u)
        found = []
        for s in range(self.n):
            R = r * self.p ** s
            layer = self.presentation(R, q, u)
            if q == 1:
                layer = layer + self.differentials(self.presentation(R, 0, u))
            for generator in layer:
                scaled = FormArithmetic.scale(generator.form, self.p ** s)
                if not scaled.is_zero():
                    found.append(Generator(scaled, f"p^{s}·{generator.recipe}"))
        return found

    def for_kind(self, kind, r, q, u):
        kind = FilKind(kind)
        if kind is FilKind.LOG:
            return self.log(r, q, u)
        if kind is FilKind.LOG_PRIME:
            return self.log_prime(r, q, u)
        if kind is FilKind.FIL:
            return self.fil(r, q, u)
        if kind is FilKind.FIL_CAP:
            return self.fil_cap(r, q, u)
        return self.filp(r, q, u)

    def over_window(self, producer, window, *args):
        """Concatenate producer(*args, u) over the weights of the window"""
        found = []
        for key in window.keys(self.ctx):
            u = WeightCalculator.weight(self.p, key)
            found.extend(producer(*args, u))
        return found


def support_forms(ctx, window, predicate):
    """Basis forms of every key in the window whose weight satisfies predicate"""
    forms = []
    for key in window.keys(ctx):
        if predicate(WeightCalculator.weight(ctx.p, key)):
            forms.append(make_form(ctx, window.q, {key: 1}))
    return forms
