# witt_core/verification.py - Sampled comparison of Witt arithmetic with the ghost oracle
import logging
import random

from core.models import CheckResult
from witt_core.models import LaurentPoly, WittVector
from witt_core.utils import GhostOracle, WittArithmetic

logger = logging.getLogger(__name__)


def random_poly(p, rng, span=3, terms=3):
    exponents = rng.sample(range(-span, span + 1), terms)
    return LaurentPoly({e: rng.randrange(p) for e in exponents}, p)


def random_witt(ctx, rng, span=3, terms=3):
    return WittVector(ctx, tuple(random_poly(ctx.p, rng, span, terms) for _ in range(ctx.n)))


def _first_mismatch(samples, compute, expected):
    for sample in samples:
        if compute(*sample) != expected(*sample):
            return sample
    return None


def check_against_oracle(ctx, samples=20, seed=0):
    """wadd, wmul and F agree with lift-compute-reduce through ghost components"""
    rng = random.Random(seed)
    pairs = [(random_witt(ctx, rng), random_witt(ctx, rng)) for _ in range(samples)]
    results = []
    for op, compute in (('add', WittArithmetic.add), ('mul', WittArithmetic.multiply)):
        witness = _first_mismatch(pairs, compute, lambda a, b, op=op: GhostOracle.checked(op, a, b))
        results.append(CheckResult.from_bool(f"w{op} = ghost oracle {ctx}", "Witt arithmetic", witness is None,
                                             {'samples': samples}, witness))
    if ctx.n >= 2:
        singles = [(a,) for a, _ in pairs]
        witness = _first_mismatch(singles, WittArithmetic.frobenius,
                                  lambda a: GhostOracle.checked('frobenius', a))
        results.append(CheckResult.from_bool(f"F = ghost oracle {ctx}", "Witt arithmetic", witness is None,
                                             {'samples': samples}, witness))
    for result in results:
        logger.info(f"{result.name}: {result.verdict.value}")
    return results


def check_ring_axioms(ctx, samples=10, seed=0):
    """Commutativity, associativity and distributivity on sampled triples"""
    rng = random.Random(seed)
    add, mul = WittArithmetic.add, WittArithmetic.multiply
    axioms = {
        'a + b = b + a': lambda a, b, c: add(a, b) == add(b, a),
        'a·b = b·a': lambda a, b, c: mul(a, b) == mul(b, a),
        '(a + b) + c = a + (b + c)': lambda a, b, c: add(add(a, b), c) == add(a, add(b, c)),
        '(a·b)·c = a·(b·c)': lambda a, b, c: mul(mul(a, b), c) == mul(a, mul(b, c)),
        'a·(b + c) = a·b + a·c': lambda a, b, c: mul(a, add(b, c)) == add(mul(a, b), mul(a, c)),
        'a - a = 0': lambda a, b, c: add(a, WittArithmetic.negate(a)).is_zero(),
    }
    triples = [tuple(random_witt(ctx, rng, span=2, terms=2) for _ in range(3)) for _ in range(samples)]
    results = []
    for name, holds in axioms.items():
        witness = next((t for t in triples if not holds(*t)), None)
        results.append(CheckResult.from_bool(f"{name} {ctx}", "ring axioms", witness is None,
                                             {'samples': samples}, witness))
    return results


def _identity(name, samples, witness):
    result = CheckResult.from_bool(name, "Witt operators", witness is None, {'samples': samples}, witness)
    logger.info(f"{result.name}: {result.verdict.value}")
    return result


def check_operator_identities(ctx, samples=10, seed=0):
    """FV = p, VF = p, V(x·F(y)) = V(x)·y, F[a] = [a^p], RF = FR, RV = VR and sum V^i[a_i] = (a_0, ...)"""
    rng = random.Random(seed)
    results = []
    upper = ctx.at_level(ctx.n + 1)
    p = WittArithmetic.from_integer(ctx, ctx.p)
    F, V, R = WittArithmetic.frobenius, WittArithmetic.verschiebung, WittArithmetic.restriction
    xs = [random_witt(ctx, rng, span=2, terms=2) for _ in range(samples)]
    witness = next((x for x in xs if WittArithmetic.frobenius(WittArithmetic.verschiebung(x))
                    != WittArithmetic.multiply(p, x)), None)
    results.append(CheckResult.from_bool(f"FV = p {ctx}", "Witt operators", witness is None,
                                         {'samples': samples}, witness))
    ys = [random_witt(upper, rng, span=2, terms=2) for _ in range(samples)]
    witness = None
    for x, y in zip(xs, ys):
        left = WittArithmetic.verschiebung(WittArithmetic.multiply(x, WittArithmetic.frobenius(y)))
        right = WittArithmetic.multiply(WittArithmetic.verschiebung(x), y)
        if left != right:
            witness = (x, y)
            break
    results.append(CheckResult.from_bool(f"V(x·Fy) = Vx·y {ctx}", "Witt operators", witness is None,
                                         {'samples': samples}, witness))

    p_upper = WittArithmetic.from_integer(upper, ctx.p)
    witness = next((y for y in ys if V(F(y)) != WittArithmetic.multiply(p_upper, y)), None)
    results.append(_identity(f"VF = p {upper}", samples, witness))

    heads = [random_poly(ctx.p, rng, span=2, terms=2) for _ in range(samples)]
    witness = next((a for a in heads
                    if F(WittArithmetic.teich(upper, a)) != WittArithmetic.teich(ctx, a ** ctx.p)), None)
    results.append(_identity(f"F[a] = [a^p] {ctx}", samples, witness))

    top = ctx.at_level(ctx.n + 2)
    zs = [random_witt(top, rng, span=1, terms=2) for _ in range(samples)]
    witness = next((z for z in zs if R(F(z)) != F(R(z))), None)
    results.append(_identity(f"RF = FR {ctx}", samples, witness))

    witness = next((y for y in ys if R(V(y)) != V(R(y))), None)
    results.append(_identity(f"RV = VR {upper}", samples, witness))

    witness = next((x for x in xs if WittArithmetic.from_teichmuller_sum(ctx, x.coords) != x), None)
    results.append(_identity(f"sum V^i[a_i] = (a_0, ..., a_(n-1)) {ctx}", samples, witness))
    return results


def witt_suite(ctx, samples=20, seed=0):
    return (check_against_oracle(ctx, samples, seed) + check_ring_axioms(ctx, samples // 2, seed)
            + check_operator_identities(ctx, samples // 2, seed))
