"""INTERNIST-1 evoking strengths: posteriors bucketed onto 0..5 and summed into scores."""

import bisect
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple, Union

from evicalc import constants
from evicalc import exceptions
from evicalc.calculi.measure import UpdateMeasure
from evicalc.calculi.value import EVOKING, CalculusValue, check_range
from evicalc.probability.joint import (
    EvidenceSet,
    JointDistribution,
    LiteralsLike,
    Proposition,
    conditional,
)


@dataclass(frozen=True)
class EvokingThresholds:
    """
    Strictly increasing cut points inside (0, 1). p(H|E) = 0 maps to 0,
    p(H|E) = 1 to 5, and any other posterior to 1 plus the number of cut
    points strictly below it. At most three cut points fit in 1..4.
    """

    cuts: Tuple[float, ...] = constants.EVOKING_CUTS

    def __post_init__(self):
        cuts = tuple(float(c) for c in self.cuts)
        object.__setattr__(self, "cuts", cuts)
        if len(cuts) > constants.EVOKING_MAX - 2:
            raise exceptions.ThresholdError(
                f"At most {constants.EVOKING_MAX - 2} cut points fit strengths 1..4, got {len(cuts)}."
            )
        if any(not (0.0 < c < 1.0) for c in cuts):
            raise exceptions.ThresholdError(f"Cut points must lie inside (0, 1), got {cuts}.")
        if any(a >= b for a, b in zip(cuts, cuts[1:])):
            raise exceptions.ThresholdError(f"Cut points must increase strictly, got {cuts}.")

    @classmethod
    def parse(cls, text: Union[str, Sequence[float], None]) -> "EvokingThresholds":
        if text is None:
            return cls()
        if isinstance(text, str):
            parts = [p for p in text.replace(" ", "").split(",") if p]
            try:
                return cls(tuple(float(p) for p in parts))
            except ValueError:
                raise exceptions.ThresholdError(f"Cannot parse thresholds '{text}'.") from None
        return cls(tuple(text))

    @property
    def buckets(self) -> int:
        """Distinct strengths reachable, including 0 and 5."""
        return len(self.cuts) + 3

    def strength(self, posterior: float) -> int:
        if not 0.0 <= posterior <= 1.0:
            raise exceptions.CalculusRangeError(
                f"Posterior must lie in [0, 1], got {posterior!r}."
            )
        if posterior == 0.0:
            return constants.EVOKING_MIN
        if posterior == 1.0:
            return constants.EVOKING_MAX
        return 1 + bisect.bisect_left(self.cuts, posterior)

    def __str__(self):
        return ",".join(repr(c) for c in self.cuts)


DEFAULT_THRESHOLDS = EvokingThresholds()


def evoking_strength(
    dist: JointDistribution,
    hypothesis: Proposition,
    evidence: LiteralsLike,
    thresholds: EvokingThresholds = DEFAULT_THRESHOLDS,
) -> int:
    return thresholds.strength(conditional(dist, hypothesis, evidence))


def internist_score(strengths: Iterable[int]) -> int:
    total = 0
    for s in strengths:
        check_range(EVOKING, s)
        total += int(s)
    return total


class EvokingStrengthMeasure(UpdateMeasure):
    """Bucketed p(H|Ee), the way INTERNIST-1 used it as if it were an update."""

    name = "evoking"
    kind = EVOKING

    def __init__(self, thresholds: EvokingThresholds = DEFAULT_THRESHOLDS):
        self.thresholds = thresholds

    def evaluate(self, dist, hypothesis, evidence, prior_evidence=None):
        given = EvidenceSet.coerce(prior_evidence).union(evidence)
        return CalculusValue(EVOKING, evoking_strength(dist, hypothesis, given, self.thresholds))

    def describe(self):
        return {"name": self.name, "kind": self.kind, "thresholds": list(self.thresholds.cuts)}

