# filtrations/utils.py - Window spaces, membership and the conductor
import logging

from chain_linalg.models import FormSpace, LinearMap, WindowModule, WindowSpec
from core.decorators import timed
from core.exceptions import DegreeError, SearchExhausted, WindowTooSmall
from core.utils import PAdicArithmetic
from drw_forms.managers import raw_coordinates
from drw_forms.utils import FormConstructors, FormOperators
from filtrations.managers import GeneratorBuilder, support_forms
from filtrations.models import FilKind, FiltrationId, GeneratorFamily

logger = logging.getLogger(__name__)


class SupportSpaces:
    """Coordinate subspaces cut out by a weight predicate"""

    @staticmethod
    def space(ctx, window, predicate):
        return WindowModule.from_forms(FormSpace(ctx, window), support_forms(ctx, window, predicate))

    @classmethod
    def regular(cls, ctx, window):
        """W_n Omega^q_O: weights >= 0 (q=0), > 0 (q=1)"""
        if window.q == 0:
            return cls.space(ctx, window, lambda u: u >= 0)
        return cls.space(ctx, window, lambda u: u > 0)

    @classmethod
    def log(cls, ctx, window):
        """W_n Omega^q_O(log): weights >= 0"""
        return cls.space(ctx, window, lambda u: u >= 0)

    @classmethod
    def at_least(cls, ctx, window, bound):
        return cls.space(ctx, window, lambda u: u >= bound)


class FiltrationSpaces:
    """Generator families and window modules of the filtration layers"""

    @staticmethod
    def check_window(fid, window):
        """Refuse windows that clip the generators needed at level r"""
        low = -fid.r
        if not window.covers(low, 0):
            raise WindowTooSmall(f"{fid} needs a window covering [{low}, 0], got {window}")

    @classmethod
    def family(cls, fid, window, validate=True):
        window = window.with_degree(fid.q)
        if validate:
            cls.check_window(fid, window)
        builder = GeneratorBuilder(fid.ctx)
        members = builder.over_window(builder.for_kind, window, fid.kind, fid.r, fid.q)
        family = GeneratorFamily(fid, window, members)
        logger.debug(f"{fid}: {len(family)} generators on {window}")
        return family

    @classmethod
    def window_space(cls, fid, window, validate=False):
        window = window.with_degree(fid.q)
        family = cls.family(fid, window, validate)
        return WindowModule.from_forms(FormSpace(fid.ctx, window), family.forms())

    @classmethod
    def filp(cls, ctx, r, window):
        return cls.window_space(FiltrationId(FilKind.FILP, r, window.q, ctx), window)

    @classmethod
    def layer(cls, ctx, kind, r, window):
        return cls.window_space(FiltrationId(kind, r, window.q, ctx), window)


def generators(fid, window):
    return FiltrationSpaces.family(fid, window, validate=True)


def window_space(fid, window):
    FiltrationSpaces.check_window(fid, window.with_degree(fid.q))
    return FiltrationSpaces.window_space(fid, window)


def fil_log_membership(x, r):
    """p^(n-1-i) v(a_i) >= -r for every raw coordinate a_i"""
    if x.q != 0:
        raise DegreeError("fil^log membership reads Witt coordinates of 0-forms")
    n, p = x.ctx.n, x.ctx.p
    for i, valuation in enumerate(raw_coordinates.coordinate_valuations(x)):
        if valuation is not None and p ** (n - 1 - i) * valuation < -r:
            return False
    return True


class ConductorSearch:
    """c(x) = min{r : x in Fil^p_r}"""

    @staticmethod
    def bounds(x):
        p, n = x.ctx.p, x.ctx.n
        weights = x.weights()
        lowest = weights[0]
        low = max(0, PAdicArithmetic.ceil_fraction(-lowest / p ** (n - 1)))
        if x.q == 0:
            pole = 0
            for i, valuation in enumerate(raw_coordinates.coordinate_valuations(x)):
                if valuation is not None:
                    pole = max(pole, -p ** (n - 1 - i) * valuation)
            high = pole + 1
        else:
            high = max(0, max(PAdicArithmetic.ceil_fraction(-u * p ** (n - 1)) for u in weights)) + 2
        return low, max(low, high)

    @classmethod
    @timed()
    def conductor(cls, x):
        if x.is_zero():
            return 0
        weights = x.weights()
        window = WindowSpec(x.q, weights[0], weights[-1])
        vector = FormSpace(x.ctx, window).column(x)
        low, high = cls.bounds(x)
        for r in range(low, high + 1):
            space = FiltrationSpaces.filp(x.ctx, r, window)
            if space.contains(vector):
                return r
        raise SearchExhausted(f"No Fil^p layer in [{low}, {high}] contains {x}")


def conductor(x):
    return ConductorSearch.conductor(x)


def fillog_explicit_generators(ctx, r, window):
    """V^j([t^i]) with p^(n-1-j) i >= -r and weight i/p^j in the window"""
    p, n = ctx.p, ctx.n
    found = []
    for j in range(n):
        level = ctx.at_level(n - j)
        start = PAdicArithmetic.ceil_div(-r, p ** (n - 1 - j))
        low = max(start, PAdicArithmetic.ceil_fraction(window.min_exp * p ** j))
        high = PAdicArithmetic.floor_fraction(window.max_exp * p ** j)
        for i in range(low, high + 1):
            element = FormOperators.iterate(FormOperators.verschiebung,
                                            FormConstructors.teich_form(level, 1, i), j)
            found.append(element)
    return found


def restricted_pole_space(ctx, q, r, window):
    """R^n(Fil^p_r W_{n+1} Omega^q) inside W_1 Omega^q"""
    n = ctx.n
    upper = ctx.at_level(n + 1)
    window = window.with_degree(q)
    source = FiltrationSpaces.filp(upper, r, window)
    target = FormSpace(ctx.at_level(1), window)
    restrict = LinearMap(source.space, target,
                         lambda x: FormOperators.iterate(FormOperators.restriction, x, n), name=f"R^{n}")
    return source.image(restrict)


def rfil_expected_bound(p, n, q, r):
    """Lowest weight of R^n(Fil^p_r W_{n+1} Omega^q)"""
    v = PAdicArithmetic.valuation_or(r, p, n + 1)
    if v <= n:
        return 1 - PAdicArithmetic.ceil_div(r, p ** n)
    b = r // p ** n
    return -b if q == 0 else 1 - b


def closed_form_bound(p, q, r):
    """Lowest weight of Fil^p_r at n = 1"""
    if q == 1 or r % p:
        return 1 - r
    return -r


__all__ = [
    'SupportSpaces', 'FiltrationSpaces', 'ConductorSearch', 'generators', 'window_space',
    'fil_log_membership', 'conductor', 'fillog_explicit_generators', 'restricted_pole_space',
    'rfil_expected_bound', 'closed_form_bound',
]
