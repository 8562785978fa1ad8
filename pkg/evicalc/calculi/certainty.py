"""MYCIN certainty factors."""

from evicalc import exceptions
from evicalc.calculi.measure import UpdateMeasure
from evicalc.calculi.value import CF, CalculusValue
from evicalc.probability.joint import (
    EvidenceSet,
    JointDistribution,
    LiteralsLike,
    Proposition,
    conditional,
)


def cf_from_posteriors(before: float, after: float) -> float:
    """
    Change of belief from ``before`` to ``after``: normalized by the room
    left to grow when belief increases, by the belief itself when it falls.
    """
    if not (0.0 < before < 1.0):
        raise exceptions.DegenerateBeliefError(
            f"Certainty factors need a belief strictly inside (0, 1), got {before!r}."
        )
    if after > before:
        return (after - before) / (1.0 - before)
    if after < before:
        return (after - before) / before
    return 0.0


def certainty_factor(
    dist: JointDistribution, hypothesis: Proposition, evidence: LiteralsLike
) -> float:
    """CF(H, E) from p(H) and p(H|E)."""
    return cf_from_posteriors(
        conditional(dist, hypothesis), conditional(dist, hypothesis, evidence)
    )


def certainty_factor_conditional(
    dist: JointDistribution,
    hypothesis: Proposition,
    evidence: LiteralsLike,
    prior_evidence: LiteralsLike = None,
) -> float:
    """CF(H, E, e): the certainty factor with every probability conditioned on e."""
    prior_evidence = EvidenceSet.coerce(prior_evidence)
    before = conditional(dist, hypothesis, prior_evidence)
    if not (0.0 < before < 1.0):
        raise exceptions.DegenerateBeliefError(
            f"p({hypothesis} | {prior_evidence}) = {before!r} leaves no room for an update."
        )
    after = conditional(
        dist, hypothesis, prior_evidence.union(EvidenceSet.coerce(evidence))
    )
    return cf_from_posteriors(before, after)


def mycin_combine(first: float, second: float) -> float:
    """
    Parallel combination of two certainty factors for the same hypothesis.

    Raises:
        ContradictoryCertaintyError: One factor is +1 and the other -1.
    """
    for value in (first, second):
        if not -1.0 <= value <= 1.0:
            raise exceptions.CalculusRangeError(
                f"Certainty factors must lie in [-1, 1], got {value!r}."
            )
    if {first, second} == {1.0, -1.0}:
        raise exceptions.ContradictoryCertaintyError(
            "Cannot combine certainty factors +1 and -1."
        )
    if first >= 0 and second >= 0:
        result = first + second - first * second
    elif first <= 0 and second <= 0:
        result = first + second + first * second
    else:
        result = (first + second) / (1.0 - min(abs(first), abs(second)))
    return min(1.0, max(-1.0, result))


class CertaintyFactorMeasure(UpdateMeasure):
    name = "cf"
    kind = CF

    def evaluate(self, dist, hypothesis, evidence, prior_evidence=None):
        return CalculusValue(
            CF, certainty_factor_conditional(dist, hypothesis, evidence, prior_evidence)
        )

    def combine(self, first, second):
        return CalculusValue(CF, mycin_combine(first.value, second.value))
