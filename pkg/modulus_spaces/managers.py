# modulus_spaces/managers.py - Per-weight generators of the zero ideal
import logging

from filtrations.managers import GeneratorBuilder
from modulus_spaces.models import ZeroIdealGenerators

logger = logging.getLogger(__name__)


class ZeroGeneratorBuilder(GeneratorBuilder):
    """Generators of W_nΩ^q_{(X,-D)} for D = r·{0} at a single weight u

    W_n(I_D) is the sum of V^e([t]^r W_{n-e}O), so in degree 0 the ideal is
    spanned by V^e([t]^r e_w) and in degree 1 by V^e([t]^r e_w dlog) together
    with the differentials of the degree-0 generators.
    """

    def ideal(self, r, u):
        found = []
        for e in range(self.n):
            generator = self.twisted(e, r, u, 'regular0', f"V^{e}([t]^{r}·O)")
            if generator:
                found.append(generator)
        return found

    def zero(self, r, q, u):
        if q == 0:
            return self.ideal(r, u)
        found = []
        for e in range(self.n):
            generator = self.twisted(e, r, u, 'regular1', f"V^{e}([t]^{r}·Ω^1)")
            if generator:
                found.append(generator)
        return found + self.differentials(self.ideal(r, u))


def zero_generators(ctx, r, q, window):
    window = window.with_degree(q)
    builder = ZeroGeneratorBuilder(ctx)
    members = builder.over_window(builder.zero, window, r, q)
    logger.debug(f"Zero ideal of {r}·{{0}} at level {ctx.n}, q={q}: {len(members)} generators on {window}")
    return ZeroIdealGenerators(ctx, r, q, window, members)
