from evicalc.calculi.measure import UpdateMeasure
from evicalc.calculi.value import POSTERIOR, CalculusValue
from evicalc.probability.joint import EvidenceSet, conditional


class PosteriorMeasure(UpdateMeasure):
    """p(H|Ee): absolute belief, audited as if it were an update."""

    name = "posterior"
    kind = POSTERIOR

    def evaluate(self, dist, hypothesis, evidence, prior_evidence=None):
        given = EvidenceSet.coerce(prior_evidence).union(evidence)
        return CalculusValue(POSTERIOR, conditional(dist, hypothesis, given))
