# witt_core/managers.py - Universal polynomial cache
import logging

from django.conf import settings
from sympy.polys.domains import ZZ
from sympy.polys.rings import ring

from core.exceptions import ResourceError, ValidationError
from witt_core.models import UniversalPolys

logger = logging.getLogger(__name__)

MAX_LEVEL = 12


class UniversalPolynomialCache:
    """Memoized S_i, P_i, F_i per (p, i), solved from the ghost identities"""

    def __init__(self):
        self._rings = {}
        self._polys = {}
        self._reduced = {}

    def ring_for(self, p):
        """Integer polynomial ring in x_0..x_L, y_0..y_L"""
        if p not in self._rings:
            names = [f"x{k}" for k in range(MAX_LEVEL + 2)] + [f"y{k}" for k in range(MAX_LEVEL + 2)]
            R, *gens = ring(','.join(names), ZZ)
            half = MAX_LEVEL + 2
            self._rings[p] = (R, tuple(gens[:half]), tuple(gens[half:]))
        return self._rings[p]

    @staticmethod
    def ghost(p, variables, i):
        """w_i = sum_{j<=i} p^j v_j^(p^(i-j))"""
        return sum((p ** j * variables[j] ** (p ** (i - j)) for j in range(i + 1)), variables[0] * 0)

    @staticmethod
    def _budget():
        return settings.DRWLAB_TERM_BUDGET

    def _checked(self, poly, label):
        budget = self._budget()
        if len(poly) > budget:
            logger.error(f"Term budget exceeded while building {label}: {len(poly)} > {budget}")
            raise ResourceError(f"{label} needs {len(poly)} terms, budget is {budget}")
        return poly

    def _solve(self, p, i, target, previous, label):
        """p^i Q_i = target - sum_{j<i} p^j Q_j^(p^(i-j))"""
        rhs = target
        for j, poly in enumerate(previous):
            rhs = rhs - p ** j * self._checked(poly ** (p ** (i - j)), f"{label}_{j}^{p ** (i - j)}")
        return self._checked(rhs.exquo(rhs.ring(ZZ(p ** i))), f"{label}_{i}")

    def get(self, p, i):
        """UniversalPolys at level i, filling lower levels on demand"""
        if i < 0:
            raise ValidationError(f"Level must be >= 0, got {i}")
        if i > MAX_LEVEL:
            raise ResourceError(f"Level {i} is beyond the supported maximum {MAX_LEVEL}")
        key = (p, i)
        if key in self._polys:
            return self._polys[key]
        lower = [self.get(p, j) for j in range(i)]
        _, x, y = self.ring_for(p)
        S = self._solve(p, i, self.ghost(p, x, i) + self.ghost(p, y, i), [u.S for u in lower], 'S')
        P = self._solve(p, i, self.ghost(p, x, i) * self.ghost(p, y, i), [u.P for u in lower], 'P')
        F = self._solve(p, i, self.ghost(p, x, i + 1), [u.F for u in lower], 'F')
        polys = UniversalPolys(p, i, S, P, F)
        # Concurrent duplicate fills store identical values
        self._polys[key] = polys
        logger.debug(f"Universal polynomials cached for p={p}, i={i}: {polys.term_counts()}")
        return polys

    def build(self, p, max_level):
        return [self.get(p, i) for i in range(max_level + 1)]

    def reduced_terms(self, p, i, kind):
        """Terms of S/P/F at level i with coefficients reduced mod p, zero terms dropped"""
        key = (p, i, kind)
        if key not in self._reduced:
            poly = getattr(self.get(p, i), kind)
            terms = tuple((monom, int(coeff) % p) for monom, coeff in poly.terms() if int(coeff) % p)
            self._reduced[key] = terms
        return self._reduced[key]

    def clear(self):
        self._polys.clear()
        self._reduced.clear()


universal_polys = UniversalPolynomialCache()
