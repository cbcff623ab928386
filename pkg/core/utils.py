# core/utils.py - p-adic and weight helpers
from fractions import Fraction
from math import ceil, floor

from core.exceptions import ValidationError


class PAdicArithmetic:
    """Integer helpers for Z/p^n and Z_(p)"""

    @staticmethod
    def valuation(value, p):
        """p-adic valuation of a nonzero integer or fraction"""
        if value == 0:
            raise ValidationError("valuation of zero is undefined")
        value = Fraction(value)
        v = 0
        num, den = value.numerator, value.denominator
        while num % p == 0:
            num //= p
            v += 1
        while den % p == 0:
            den //= p
            v -= 1
        return v

    @staticmethod
    def valuation_or(value, p, default):
        if value == 0:
            return default
        return PAdicArithmetic.valuation(value, p)

    @staticmethod
    def ceil_div(a, b):
        """Exact ceiling of a/b for integers"""
        return -((-a) // b)

    @staticmethod
    def floor_div(a, b):
        return a // b

    @staticmethod
    def ceil_fraction(value):
        return ceil(Fraction(value))

    @staticmethod
    def floor_fraction(value):
        return floor(Fraction(value))

    @staticmethod
    def inverse(a, modulus):
        """Inverse of a unit mod modulus"""
        if modulus == 1:
            return 0
        return pow(a, -1, modulus)

    @staticmethod
    def teichmuller(c, p, n):
        """Multiplicative lift of c in F_p to W_n(F_p) = Z/p^n"""
        modulus = p ** n
        return pow(c % p, p ** (n - 1), modulus)

    @staticmethod
    def residue_digit(value, p, n):
        """Inverse of teichmuller: c in F_p with omega(c) = value mod p"""
        return value % p


class WeightCalculator:
    """Weights u = j/p^s of normal-form keys (s, j)"""

    @staticmethod
    def weight(p, key):
        s, j = key
        return Fraction(j, p ** s)

    @staticmethod
    def depth(p, weight):
        """The s with weight = j/p^s and p not dividing j (s = 0 for integers)"""
        weight = Fraction(weight)
        den = weight.denominator
        s = 0
        while den % p == 0:
            den //= p
            s += 1
        if den != 1:
            raise ValidationError(f"Weight {weight} has a denominator prime to {p}")
        return s

    @classmethod
    def key(cls, p, weight):
        weight = Fraction(weight)
        s = cls.depth(p, weight)
        return s, int(weight * p ** s)

    @classmethod
    def keys_between(cls, p, n, low, high):
        """All keys of depth <= n-1 whose weight lies in [low, high], sorted by weight"""
        low, high = Fraction(low), Fraction(high)
        scale = p ** (n - 1)
        keys = []
        for numerator in range(ceil(low * scale), floor(high * scale) + 1):
            keys.append(cls.key(p, Fraction(numerator, scale)))
        return keys
