from abc import ABC, abstractmethod

from evicalc.calculi.value import CalculusValue
from evicalc.probability.joint import JointDistribution, LiteralsLike, Proposition


class UpdateMeasure(ABC):
    """
    An update U(H, E, e): the change of belief in H on learning E after
    prior evidence e. Subclasses that satisfy the basic update property
    with a known function declare it through ``combine``.
    """

    name: str = ""
    kind: str = ""

    @abstractmethod
    def evaluate(
        self,
        dist: JointDistribution,
        hypothesis: Proposition,
        evidence: LiteralsLike,
        prior_evidence: LiteralsLike = None,
    ) -> CalculusValue:
        """Returns U(H, E, e)."""
        raise NotImplementedError

    def has_combinator(self) -> bool:
        return type(self).combine is not UpdateMeasure.combine

    def combine(self, first: CalculusValue, second: CalculusValue) -> CalculusValue:
        """Returns phi(first, second); total on the measure's value range."""
        raise NotImplementedError(f"The {self.name} measure declares no combinator.")

    def describe(self) -> dict:
        return {"name": self.name, "kind": self.kind}

    def __call__(self, dist, hypothesis, evidence, prior_evidence=None) -> float:
        return float(self.evaluate(dist, hypothesis, evidence, prior_evidence))

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"

