# drw_forms/managers.py - Raw Witt coordinates <-> normal forms
import logging
from fractions import Fraction

from core.exceptions import DegreeError, ValidationError
from drw_forms.utils import WeightValues
from witt_core.models import LaurentPoly, WittVector

logger = logging.getLogger(__name__)


class RawCoordinateManager:
    """Convert 0-forms to and from Witt coordinates (a_0, ..., a_{n-1}) over F_p[t, 1/t]

    With U = t^(1/p^(n-1)) the 0-form with values A(u) corresponds to
    G(U) = sum_u A(u) U^(u p^(n-1)) = sum_k p^k a_k(U)^(p^(n-1-k)) mod p^n.
    """

    @staticmethod
    def _substituted(poly):
        """a(t) -> a(U) with integer representatives"""
        return poly.lift()

    @classmethod
    def recompose(cls, vector):
        """Witt coordinates -> NormalForm0"""
        if vector.is_lift:
            raise ValidationError("recompose expects F_p coefficients")
        ctx = vector.ctx
        p, n = ctx.p, ctx.n
        total = LaurentPoly.zero(0)
        for k, coord in enumerate(vector.coords):
            total = total + (cls._substituted(coord) ** (p ** (n - 1 - k))).scale(p ** k)
        total = total.reduce(p ** n)
        scale = p ** (n - 1)
        values = {Fraction(m, scale): c for m, c in total.items()}
        return WeightValues.to_form(ctx, 0, values)

    @classmethod
    def decompose(cls, form):
        """NormalForm0 -> Witt coordinates"""
        if form.q != 0:
            raise DegreeError("Raw coordinates exist for 0-forms only")
        ctx = form.ctx
        p, n = ctx.p, ctx.n
        scale = p ** (n - 1)
        remainder = LaurentPoly({int(u * scale): value for u, value in WeightValues.of(form).items()}, 0)
        coords = []
        for k in range(n):
            step = p ** (n - 1 - k)
            level_modulus = p ** (n - k)
            remainder = remainder.reduce(level_modulus).lift()
            coeffs = {}
            for exponent, value in remainder.items():
                if value % p == 0:
                    continue
                if exponent % step:
                    raise ValidationError(f"Exponent {exponent} is not a multiple of {step}")
                coeffs[exponent // step] = value % p
            coord = LaurentPoly(coeffs, p)
            coords.append(coord)
            if k == n - 1:
                break
            power = cls._substituted(coord) ** step
            remainder = (remainder - power).reduce(level_modulus).lift().exquo(p)
        return WittVector(ctx, tuple(coords))

    @classmethod
    def coordinate_valuations(cls, form):
        """v(a_i) for each raw coordinate (None for zero coordinates)"""
        return [coord.valuation() for coord in cls.decompose(form).coords]


raw_coordinates = RawCoordinateManager()
