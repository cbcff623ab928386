# core/tests.py
from fractions import Fraction

import pytest

from core.decorators import same_context, timed
from core.exceptions import ContextMismatch, ParseError, ValidationError
from core.models import CheckResult, Report, Verdict
from core.utils import PAdicArithmetic, WeightCalculator
from core import validators


# validators

@pytest.mark.parametrize('value', [2, 3, 5, 101])
def test_validate_prime_accepts_primes(value):
    validators.validate_prime(value)


@pytest.mark.parametrize('value', [0, 1, 4, 9, -3, True, 2.0])
def test_validate_prime_rejects(value):
    with pytest.raises(ValidationError):
        validators.validate_prime(value)


def test_validate_ladder():
    validators.validate_ladder((1, 2, 4))
    with pytest.raises(ValidationError):
        validators.validate_ladder((2, 2))
    with pytest.raises(ValidationError):
        validators.validate_ladder((0, 1))


def test_validate_unit_scalar():
    validators.validate_unit_scalar(4, 3)
    with pytest.raises(ValidationError):
        validators.validate_unit_scalar(6, 3)


# p-adic helpers

def test_valuation():
    assert PAdicArithmetic.valuation(12, 2) == 2
    assert PAdicArithmetic.valuation(Fraction(3, 8), 2) == -3
    assert PAdicArithmetic.valuation_or(0, 2, None) is None
    with pytest.raises(ValidationError):
        PAdicArithmetic.valuation(0, 3)


def test_rounding_helpers():
    assert PAdicArithmetic.ceil_div(-5, 2) == -2
    assert PAdicArithmetic.floor_div(-5, 2) == -3
    assert PAdicArithmetic.ceil_fraction(Fraction(-5, 4)) == -1
    assert PAdicArithmetic.floor_fraction(Fraction(5, 4)) == 1


@pytest.mark.parametrize('p, n', [(2, 3), (3, 2), (5, 2)])
def test_teichmuller_lifts_are_multiplicative(p, n):
    modulus = p ** n
    for a in range(1, p):
        assert PAdicArithmetic.teichmuller(a, p, n) % p == a
        for b in range(1, p):
            product = PAdicArithmetic.teichmuller(a * b, p, n)
            assert product == PAdicArithmetic.teichmuller(a, p, n) * PAdicArithmetic.teichmuller(b, p, n) % modulus


def test_inverse():
    assert PAdicArithmetic.inverse(3, 8) * 3 % 8 == 1
    assert PAdicArithmetic.inverse(5, 1) == 0


# weights

def test_weight_keys():
    assert WeightCalculator.weight(2, (2, 3)) == Fraction(3, 4)
    assert WeightCalculator.key(3, Fraction(-2, 9)) == (2, -2)
    assert WeightCalculator.key(2, 4) == (0, 4)
    with pytest.raises(ValidationError):
        WeightCalculator.depth(2, Fraction(1, 3))


def test_keys_between_is_sorted_and_bounded():
    keys = WeightCalculator.keys_between(2, 2, -1, 1)
    assert keys == [(0, -1), (1, -1), (0, 0), (1, 1), (0, 1)]
    weights = [WeightCalculator.weight(2, key) for key in WeightCalculator.keys_between(3, 3, -2, 2)]
    assert weights == sorted(weights)
    assert len(weights) == 4 * 9 + 1


# models

def test_report_collects_failures():
    report = Report('demo')
    report.add(CheckResult.from_bool('ok', 'ref', True, {'a': 1}, 'ignored'))
    report.extend([CheckResult.from_bool('bad', 'ref', False, witness='x')])
    assert not report.passed
    assert [check.name for check in report.failures()] == ['bad']
    assert report.checks[0].witness is None
    assert report.checks[1].verdict is Verdict.FAIL


def test_parse_error_position():
    error = ParseError('Unexpected', 2, 7)
    assert 'line 2, column 7' in str(error)
    assert error.to_dict() == {'error': 'parse', 'message': str(error), 'line': 2, 'column': 7}


# decorators

def test_timed_returns_result(caplog):
    @timed(threshold=0.0)
    def work(x):
        return x + 1

    with caplog.at_level('WARNING'):
        assert work(1) == 2
    assert 'Slow call' in caplog.text


class _Element:
    def __init__(self, ctx, q):
        self.ctx = ctx
        self.q = q


def test_same_context():
    @same_context
    def combine(x, y):
        return 'ok'

    assert combine(_Element('a', 0), _Element('a', 0)) == 'ok'
    with pytest.raises(ContextMismatch):
        combine(_Element('a', 0), _Element('b', 0))
    with pytest.raises(ContextMismatch):
        combine(_Element('a', 0), _Element('a', 1))
