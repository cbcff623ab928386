# core/models.py - Check results and reports
from dataclasses import dataclass, field
from enum import Enum


class Verdict(str, Enum):
    PASS = 'pass'
    FAIL = 'fail'

    @classmethod
    def of(cls, ok):
        return cls.PASS if ok else cls.FAIL


@dataclass(frozen=True)
class CheckResult:
    """One verified identity"""
    name: str
    reference: str
    verdict: Verdict
    lengths: dict = field(default_factory=dict)
    witness: object = None

    @property
    def passed(self):
        return self.verdict is Verdict.PASS

    @classmethod
    def from_bool(cls, name, reference, ok, lengths=None, witness=None):
        return cls(name, reference, Verdict.of(ok), dict(lengths or {}), None if ok else witness)


@dataclass
class Report:
    """Ordered list of checks produced by one suite run"""
    suite: str
    config: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    elapsed: float = 0.0

    def add(self, check):
        self.checks.append(check)
        return check

    def extend(self, checks):
        self.checks.extend(checks)

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    def failures(self):
        return [check for check in self.checks if not check.passed]
