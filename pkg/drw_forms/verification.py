# drw_forms/verification.py - Sampled operator relations on normal forms
import logging
import random

from core.models import CheckResult
from core.utils import WeightCalculator
from drw_forms.managers import raw_coordinates
from drw_forms.models import make_form
from drw_forms.utils import FormArithmetic, FormOperators, FormPrinter

logger = logging.getLogger(__name__)

F, V, R, d = FormOperators.frobenius, FormOperators.verschiebung, FormOperators.restriction, FormOperators.d
pline, mul = FormOperators.pline, FormArithmetic.mul


def sample_form(ctx, q, rng, low=-3, high=3, terms=3):
    keys = WeightCalculator.keys_between(ctx.p, ctx.n, low, high)
    coeffs = {key: rng.randrange(1, ctx.p ** (ctx.n - key[0])) for key in rng.sample(keys, min(terms, len(keys)))}
    return make_form(ctx, q, coeffs)


def _relation(name, samples, holds):
    witness = None
    for sample in samples:
        if not holds(*sample):
            witness = ', '.join(FormPrinter.render(x) for x in sample)
            break
    result = CheckResult.from_bool(name, "de Rham-Witt relations", witness is None, {'samples': len(samples)},
                                   witness)
    logger.info(f"{name}: {result.verdict.value}")
    return result


def check_relations(ctx, samples=20, seed=0):
    """Relations among F, V, R, d and p-underline on random forms at level n"""
    rng = random.Random(seed)
    p = ctx.p
    upper = ctx.at_level(ctx.n + 1)
    results = []
    for q in (0, 1):
        xs = [(sample_form(ctx, q, rng),) for _ in range(samples)]
        ys = [(sample_form(upper, q, rng),) for _ in range(samples)]
        results += [
            _relation(f"FV = p (q={q})", xs, lambda x: F(V(x)) == p * x),
            _relation(f"VF = p (q={q})", ys, lambda y: V(F(y)) == p * y),
            _relation(f"RV = VR (q={q})", ys, lambda y: R(V(y)) == V(R(y))),
            _relation(f"p̲R = p (q={q})", ys, lambda y: pline(R(y)) == p * y),
            _relation(f"Rp̲ = p (q={q})", xs, lambda x: R(pline(x)) == p * x),
            _relation(f"C F = R (q={q})", ys, lambda y: FormOperators.cartier(F(y)) == R(y)),
        ]
        if q == 1:
            results.append(_relation("residue p̲ = p residue", xs, lambda x: FormOperators.residue(pline(x))
                                     == p * FormOperators.residue(x) % upper.modulus))
        if ctx.n >= 2:
            results.append(_relation(f"RF = FR (q={q})", ys, lambda y: R(F(y)) == F(R(y))))
    functions = [(sample_form(ctx, 0, rng),) for _ in range(samples)]
    upper_functions = [(sample_form(upper, 0, rng),) for _ in range(samples)]
    products = [(sample_form(ctx, 0, rng), sample_form(upper, 0, rng)) for _ in range(samples)]
    pairs = [(sample_form(ctx, 0, rng), sample_form(ctx, 0, rng)) for _ in range(samples)]
    results += [
        _relation("FdV = d", functions, lambda x: F(d(V(x))) == d(x)),
        _relation("Vd = p dV", functions, lambda x: V(d(x)) == p * d(V(x))),
        _relation("Rd = dR", upper_functions, lambda y: R(d(y)) == d(R(y))),
        _relation("residue d = 0", functions, lambda x: FormOperators.residue(d(x)) == 0),
        _relation("V(x·Fy) = Vx·y", products, lambda x, y: V(mul(x, F(y))) == mul(V(x), y)),
        _relation("d(xy) = dx·y + x·dy", pairs,
                  lambda x, y: d(mul(x, y)) == FormArithmetic.add(mul(d(x), y), mul(x, d(y)))),
        _relation("recompose(decompose(x)) = x", functions,
                  lambda x: raw_coordinates.recompose(raw_coordinates.decompose(x)) == x),
    ]
    return results
