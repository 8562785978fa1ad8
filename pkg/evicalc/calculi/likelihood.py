"""Likelihood ratios and weights of evidence, the probabilistic modular updates."""

import math
from typing import Iterable, Union

from evicalc import constants
from evicalc import exceptions
from evicalc.calculi.measure import UpdateMeasure
from evicalc.calculi.value import LAMBDA, WEIGHT, CalculusValue
from evicalc.probability.joint import (
    JointDistribution,
    LiteralsLike,
    Proposition,
    likelihood_ratio,
)


def parse_log_base(base: Union[str, float, None]) -> float:
    """Accepts ``"e"``, ``"10"``, ``"2"`` or any positive number other than 1."""
    if base is None:
        base = constants.DEFAULT_LOG_BASE
    if isinstance(base, str):
        named = constants.LOG_BASES.get(base.strip().lower())
        if named is not None:
            return named
        try:
            base = float(base)
        except ValueError:
            raise exceptions.LogBaseError(f"Unknown log base '{base}'.") from None
    base = float(base)
    if not (base > 0 and base != 1 and math.isfinite(base)):
        raise exceptions.LogBaseError(f"Log base must be positive and not 1, got {base!r}.")
    return base


def weight_of_evidence(
    dist: JointDistribution,
    hypothesis: Proposition,
    evidence: LiteralsLike,
    prior_evidence: LiteralsLike = None,
    base: Union[str, float] = math.e,
) -> float:
    """log_base lambda(H, E, e); propagates UndefinedRatioError."""
    ratio = likelihood_ratio(dist, hypothesis, evidence, prior_evidence)
    return math.log(ratio) / math.log(parse_log_base(base))


def combine_lambdas(first: float, second: float) -> float:
    for value in (first, second):
        if not (value > 0 and math.isfinite(value)):
            raise exceptions.CalculusRangeError(
                f"Likelihood ratios must be positive and finite, got {value!r}."
            )
    return first * second


def combine_weights(weights: Iterable[float]) -> float:
    return math.fsum(weights)


def _prior_odds(prior: float) -> float:
    if not (0.0 < prior < 1.0):
        raise exceptions.DegenerateBeliefError(
            f"Prior must lie strictly inside (0, 1), got {prior!r}."
        )
    return prior / (1.0 - prior)


def posterior_from_lambda(prior: float, ratio: float) -> float:
    posterior_odds = _prior_odds(prior) * ratio
    if math.isinf(posterior_odds):
        return 1.0
    return posterior_odds / (1.0 + posterior_odds)


def posterior_from_weight(
    prior: float, total_weight: float, base: Union[str, float] = math.e
) -> float:
    """Posterior from prior odds times base ** total_weight."""
    base = parse_log_base(base)
    log_odds = math.log(_prior_odds(prior)) + total_weight * math.log(base)
    # Logistic in a form that never overflows.
    if log_odds >= 0:
        return 1.0 / (1.0 + math.exp(-log_odds))
    z = math.exp(log_odds)
    return z / (1.0 + z)


class LikelihoodRatioMeasure(UpdateMeasure):
    name = "lambda"
    kind = LAMBDA

    def evaluate(self, dist, hypothesis, evidence, prior_evidence=None):
        return CalculusValue(
            LAMBDA, likelihood_ratio(dist, hypothesis, evidence, prior_evidence)
        )

    def combine(self, first, second):
        return CalculusValue(LAMBDA, combine_lambdas(first.value, second.value))


class WeightOfEvidenceMeasure(UpdateMeasure):
    name = "weight"
    kind = WEIGHT

    def __init__(self, base: Union[str, float] = math.e):
        self.base = parse_log_base(base)

    def evaluate(self, dist, hypothesis, evidence, prior_evidence=None):
        return CalculusValue(
            WEIGHT,
            weight_of_evidence(dist, hypothesis, evidence, prior_evidence, self.base),
        )

    def combine(self, first, second):
        return CalculusValue(WEIGHT, combine_weights([first.value, second.value]))

    def describe(self):
        return {"name": self.name, "kind": self.kind, "log_base": self.base}
