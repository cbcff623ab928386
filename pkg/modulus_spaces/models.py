# modulus_spaces/models.py - Divisors, p-divisibility decompositions and zero-ideal generators
from dataclasses import dataclass, field

from core.exceptions import ValidationError
from core.utils import PAdicArithmetic
from core.validators import validate_multiplicity

ORIGIN = '0'


@dataclass(frozen=True)
class ModulusDivisor:
    """Effective divisor as named points with multiplicities >= 1"""
    points: tuple = ()

    def __post_init__(self):
        items = dict(self.points)
        for multiplicity in items.values():
            validate_multiplicity(multiplicity)
        object.__setattr__(self, 'points', tuple(sorted(items.items())))

    @classmethod
    def of(cls, mapping):
        """Build from a mapping, dropping points of multiplicity 0"""
        return cls(tuple((name, m) for name, m in dict(mapping).items() if m))

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def at_origin(cls, r):
        if not isinstance(r, int) or r < 0:
            raise ValidationError(f"Multiplicity at the origin must be an integer >= 0, got {r!r}")
        return cls.of({ORIGIN: r})

    @classmethod
    def coerce(cls, value):
        if isinstance(value, cls):
            return value
        return cls.at_origin(value)

    def multiplicity(self, name):
        return dict(self.points).get(name, 0)

    @property
    def r(self):
        """Multiplicity at {t = 0}"""
        return self.multiplicity(ORIGIN)

    def origin_multiplicity(self):
        """r for a divisor supported on {t = 0}; the local engine sees only that point"""
        others = [name for name, _ in self.points if name != ORIGIN]
        if others:
            raise ValidationError(f"Module computations need a divisor supported at {ORIGIN}, got {self}")
        return self.r

    def support(self):
        return tuple(name for name, _ in self.points)

    def is_zero(self):
        return not self.points

    def __add__(self, other):
        total = dict(self.points)
        for name, m in other.points:
            total[name] = total.get(name, 0) + m
        return ModulusDivisor.of(total)

    def __sub__(self, other):
        total = dict(self.points)
        for name, m in other.points:
            total[name] = total.get(name, 0) - m
            if total[name] < 0:
                raise ValidationError(f"{self} - {other} is not effective")
        return ModulusDivisor.of(total)

    def scaled(self, k):
        if k < 0:
            raise ValidationError(f"Scaling factor must be >= 0, got {k}")
        return ModulusDivisor.of({name: k * m for name, m in self.points})

    def reduced(self):
        return ModulusDivisor.of({name: 1 for name, _ in self.points})

    def ceil_div(self, m):
        """⌈E/m⌉ pointwise"""
        return ModulusDivisor.of({name: PAdicArithmetic.ceil_div(k, m) for name, k in self.points})

    def floor_div(self, m):
        """⌊E/m⌋ pointwise"""
        return ModulusDivisor.of({name: k // m for name, k in self.points})

    def __str__(self):
        if not self.points:
            return '0'
        return ' + '.join(f"{m}·{{{name}}}" for name, m in self.points)


@dataclass(frozen=True)
class PDivDecomposition:
    """E = E' + sum_i p^(r_i) E_i"""
    p: int
    ladder: tuple
    prime_part: ModulusDivisor
    parts: tuple

    def reconstruct(self):
        total = self.prime_part
        for exponent, part in zip(self.ladder, self.parts):
            total = total + part.scaled(self.p ** exponent)
        return total

    def part(self, i):
        """E_i for 1 <= i <= len(ladder)"""
        if not 1 <= i <= len(self.ladder):
            raise ValidationError(f"Part index {i} outside 1..{len(self.ladder)}")
        return self.parts[i - 1]

    def split_top(self):
        """(D', D_s) with E = D' + p^(r_s) D_s"""
        top = self.parts[-1]
        return self.reconstruct() - top.scaled(self.p ** self.ladder[-1]), top

    def __str__(self):
        pieces = [f"E'={self.prime_part}"]
        pieces += [f"E_{i}={part}" for i, part in enumerate(self.parts, start=1)]
        return ', '.join(pieces)


@dataclass
class ZeroIdealGenerators:
    """Degree-q generators of the zero ideal of r·{0} on a window"""
    ctx: object
    r: int
    q: int
    window: object
    members: list = field(default_factory=list)

    def forms(self):
        return [member.form for member in self.members]

    def recipes(self):
        return sorted({member.recipe for member in self.members})

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)
