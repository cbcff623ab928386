# duality_engine/models.py - Annihilator specifications and pairing reports
from dataclasses import dataclass, field
from enum import Enum

from core.exceptions import ValidationError
from core.models import CheckResult, Verdict
from core.validators import validate_degree, validate_level


class AnnihilatorSide(str, Enum):
    POLE_OF_ZERO = 'pole-of-zero'
    ZERO_OF_POLE = 'zero-of-pole'

    @classmethod
    def parse(cls, value):
        for side in cls:
            if side.value == value:
                return side
        raise ValidationError(f"Unknown annihilator side {value!r}")


class PairingVerdict(str, Enum):
    PERFECT = 'perfect'
    DEGENERATE = 'degenerate'


@dataclass(frozen=True)
class AnnihilatorSpec:
    side: AnnihilatorSide
    r: int
    q: int
    ctx: object
    window: object

    def __post_init__(self):
        object.__setattr__(self, 'side', AnnihilatorSide(self.side))
        validate_level(self.r)
        validate_degree(self.q)


@dataclass
class PairingReport:
    """Residue pairing between two finite quotients"""
    gram: tuple
    divisors: tuple
    left_length: int
    right_length: int
    left_kernel_length: int
    right_kernel_length: int
    verdict: PairingVerdict
    witness: object = None
    modulus: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def is_perfect(self):
        return self.verdict is PairingVerdict.PERFECT

    def lengths(self):
        lengths = {
            'left': self.left_length,
            'right': self.right_length,
            'left_kernel': self.left_kernel_length,
            'right_kernel': self.right_kernel_length,
        }
        lengths.update(self.extra)
        return lengths

    def to_check(self, name, reference):
        return CheckResult(name, reference, Verdict.of(self.is_perfect), self.lengths(),
                           None if self.is_perfect else self.witness)

    def to_dict(self):
        return {
            'verdict': self.verdict.value,
            'divisors': list(self.divisors),
            'gram': [list(row) for row in self.gram],
            'modulus': self.modulus,
            **self.lengths(),
            'witness': self.witness,
        }


@dataclass(frozen=True)
class LogHomology:
    """Kernel and cokernel lengths of 1 - C or C^-1 - 1 on a window"""
    sign: str
    q: int
    r: int
    window: object
    kernel_length: int
    cokernel_length: int
    image_length: object = None

    def to_dict(self):
        data = {'sign': self.sign, 'q': self.q, 'r': self.r, 'window': str(self.window),
                'H0': self.kernel_length, 'H1': self.cokernel_length}
        if self.image_length is not None:
            data['fil_image'] = self.image_length
        return data
