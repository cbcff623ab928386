# cli/models.py - Run configuration shared by every command
from dataclasses import asdict, dataclass

from chain_linalg.models import WindowSpec
from core.validators import validate_degree, validate_length, validate_level, validate_prime
from witt_core.models import PrimeContext

FORMATS = ('text', 'json')


@dataclass(frozen=True)
class RunConfig:
    p: int
    n: int
    window_text: str
    r: int = 0
    q: int = 1
    fmt: str = 'text'
    seed: int = 0
    jobs: int = 1
    samples: int = 20

    def __post_init__(self):
        validate_prime(self.p)
        validate_length(self.n)
        validate_level(self.r)
        validate_degree(self.q)
        WindowSpec.parse(self.q, self.window_text)

    @property
    def ctx(self):
        return PrimeContext(self.p, self.n)

    @property
    def window(self):
        return WindowSpec.parse(self.q, self.window_text)

    def to_dict(self):
        data = asdict(self)
        data['window'] = data.pop('window_text')
        data.pop('fmt')
        data.pop('jobs')
        return data
