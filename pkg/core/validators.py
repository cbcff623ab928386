# core/validators.py - Input validators
from sympy import isprime

from core.exceptions import ValidationError


def validate_prime(value):
    """Validate that p is a prime number"""
    if not isinstance(value, int) or isinstance(value, bool) or not isprime(value):
        raise ValidationError(f"p must be a prime number, got {value!r}")


def validate_length(value):
    """Validate truncation length n >= 1"""
    if not isinstance(value, int) or value < 1:
        raise ValidationError(f"n must be an integer >= 1, got {value!r}")


def validate_level(value):
    """Validate filtration level r >= 0"""
    if not isinstance(value, int) or value < 0:
        raise ValidationError(f"r must be an integer >= 0, got {value!r}")


def validate_degree(value):
    """Validate form degree q in {0, 1}"""
    if value not in (0, 1):
        raise ValidationError(f"q must be 0 or 1, got {value!r}")


def validate_window_bounds(min_exp, max_exp):
    """Validate that a window is non-empty"""
    if min_exp > max_exp:
        raise ValidationError(f"Window minimum {min_exp} exceeds maximum {max_exp}")


def validate_ladder(ladder):
    """Validate a strictly increasing exponent ladder of positive integers"""
    previous = 0
    for value in ladder:
        if not isinstance(value, int) or value <= previous:
            raise ValidationError(f"Ladder must be strictly increasing and >= 1, got {tuple(ladder)}")
        previous = value


def validate_multiplicity(value):
    """Validate a divisor multiplicity"""
    if not isinstance(value, int) or value < 1:
        raise ValidationError(f"Multiplicities must be integers >= 1, got {value!r}")


def validate_unit_scalar(value, p):
    """Validate c in F_p^x"""
    if value % p == 0:
        raise ValidationError(f"Scalar {value} is zero in F_{p}")
