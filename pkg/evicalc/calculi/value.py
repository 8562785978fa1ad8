import math
from dataclasses import dataclass
from typing import Union

from evicalc import constants
from evicalc import exceptions

LAMBDA = "lambda"
WEIGHT = "weight"
CF = "cf"
POSTERIOR = "posterior"
EVOKING = "evoking"

KINDS = (LAMBDA, WEIGHT, CF, POSTERIOR, EVOKING)

IDENTITY = {LAMBDA: 1.0, WEIGHT: 0.0, CF: 0.0, EVOKING: 0}


def check_range(kind: str, value: Union[float, int]):
    if kind not in KINDS:
        raise exceptions.CalculusRangeError(f"Unknown calculus kind '{kind}'.")
    if kind == EVOKING:
        if isinstance(value, bool) or not float(value).is_integer() or not (
            constants.EVOKING_MIN <= value <= constants.EVOKING_MAX
        ):
            raise exceptions.CalculusRangeError(
                f"Evoking strength must be an integer in 0..5, got {value!r}."
            )
        return
    if not math.isfinite(value):
        raise exceptions.CalculusRangeError(f"{kind} value must be finite, got {value!r}.")
    if kind == LAMBDA and not value > 0:
        raise exceptions.CalculusRangeError(f"lambda must be positive, got {value!r}.")
    if kind == CF and not -1.0 <= value <= 1.0:
        raise exceptions.CalculusRangeError(f"cf must lie in [-1, 1], got {value!r}.")
    if kind == POSTERIOR and not 0.0 <= value <= 1.0:
        raise exceptions.CalculusRangeError(f"posterior must lie in [0, 1], got {value!r}.")


@dataclass(frozen=True)
class CalculusValue:
    """A value of one calculus, checked against that calculus's legal range."""

    kind: str
    value: Union[float, int]

    def __post_init__(self):
        check_range(self.kind, self.value)
        if self.kind == EVOKING:
            object.__setattr__(self, "value", int(self.value))
        else:
            object.__setattr__(self, "value", float(self.value))

    def __float__(self):
        return float(self.value)

    def __str__(self):
        if self.kind == EVOKING:
            return f"{self.kind}={self.value}"
        return f"{self.kind}={self.value:.6g}"


def identity(kind: str) -> CalculusValue:
    return CalculusValue(kind, IDENTITY[kind])
