import dataclasses
import os
from dataclasses import dataclass
from typing import Mapping, Optional

from evicalc import constants
from evicalc import exceptions

SEED_ENV = "EVICALC_SEED"


def parse_seed(value) -> int:
    """
    Raises:
        ParameterRangeError: ``value`` is not an integer in [0, 2^64).
    """
    try:
        seed = int(str(value).strip())
    except ValueError:
        raise exceptions.ParameterRangeError(f"Seed must be an integer, got {value!r}.") from None
    if not 0 <= seed < constants.MAX_SEED:
        raise exceptions.ParameterRangeError(f"Seed must lie in [0, 2^64), got {seed}.")
    return seed


def resolve_seed(seed=None, environ: Optional[Mapping[str, str]] = None) -> int:
    """The ``--seed`` flag, else ``EVICALC_SEED``, else 0."""
    if seed is not None:
        return parse_seed(seed)
    environ = os.environ if environ is None else environ
    value = environ.get(SEED_ENV)
    if value is None or not value.strip():
        return constants.DEFAULT_SEED
    return parse_seed(value)


@dataclass(frozen=True)
class RunConfig:
    """Everything that determines a run's output; embedded in its report."""

    command: str
    name: Optional[str] = None
    measure: Optional[str] = None
    calculus: Optional[str] = None
    axiom: Optional[str] = None
    family: Optional[str] = None
    seed: int = constants.DEFAULT_SEED
    samples: int = constants.DEFAULT_SAMPLES
    findings: int = constants.DEFAULT_FINDINGS
    tol: Optional[float] = None
    match_tol: float = constants.COLLISION_MATCH_TOLERANCE
    epsilon: float = constants.CF_LIMIT_EPSILON
    log_base: Optional[str] = None
    thresholds: Optional[str] = None
    format: str = "text"
    out: Optional[str] = None
    model: Optional[str] = None
    rules: Optional[str] = None
    case: Optional[str] = None

    @classmethod
    def from_args(cls, args, environ: Optional[Mapping[str, str]] = None) -> "RunConfig":
        """Builds the configuration from parsed arguments; absent options keep their defaults."""
        values = {}
        for f in dataclasses.fields(cls):
            if f.name == "seed":
                continue
            value = getattr(args, f.name, None)
            if value is not None:
                values[f.name] = value
        return cls(seed=resolve_seed(getattr(args, "seed", None), environ), **values)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)
