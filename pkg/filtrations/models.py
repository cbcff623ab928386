# filtrations/models.py - Filtration identifiers and generator families
from dataclasses import dataclass, field
from enum import Enum

from core.exceptions import ValidationError
from core.validators import validate_degree, validate_level


class FilKind(str, Enum):
    LOG = 'log'
    LOG_PRIME = 'logPrime'
    FIL = 'fil'
    FIL_CAP = 'Fil'
    FILP = 'FilP'

    @classmethod
    def parse(cls, value):
        for kind in cls:
            if kind.value == value:
                return kind
        raise ValidationError(f"Unknown filtration kind {value!r}")


@dataclass(frozen=True)
class FiltrationId:
    kind: FilKind
    r: int
    q: int
    ctx: object

    def __post_init__(self):
        object.__setattr__(self, 'kind', FilKind(self.kind))
        validate_level(self.r)
        validate_degree(self.q)

    def __str__(self):
        return f"{self.kind.value}_{self.r} W_{self.ctx.n}Ω^{self.q} (p={self.ctx.p})"


@dataclass(frozen=True)
class Generator:
    """A generator with the recipe that produced it"""
    form: object
    recipe: str


@dataclass
class GeneratorFamily:
    fid: FiltrationId
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
