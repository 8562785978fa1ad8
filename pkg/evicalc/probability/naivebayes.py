from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from evicalc import constants
from evicalc import exceptions
from evicalc.probability.joint import JointDistribution, Schema, joint_from_table


def _check_open_unit(name: str, value: float):
    if not (0.0 < value < 1.0):
        raise exceptions.ParameterRangeError(
            f"{name} must lie strictly inside (0, 1), got {value!r}."
        )


@dataclass(frozen=True)
class Finding:
    """One evidence variable of a naive-Bayes model."""

    name: str
    p_given_h: float
    p_given_not_h: float

    def __post_init__(self):
        object.__setattr__(self, "p_given_h", float(self.p_given_h))
        object.__setattr__(self, "p_given_not_h", float(self.p_given_not_h))
        _check_open_unit(f"p({self.name}|H)", self.p_given_h)
        _check_open_unit(f"p({self.name}|~H)", self.p_given_not_h)

    @classmethod
    def from_ratio(cls, name: str, ratio: float) -> "Finding":
        """Finding with p(E|H) = r/(1+r) and p(E|~H) = 1/(1+r); ratio 99 gives .99/.01."""
        if not (ratio > 0 and np.isfinite(ratio)):
            raise exceptions.ParameterRangeError(
                f"Likelihood ratio of {name} must be positive and finite, got {ratio!r}."
            )
        return cls(name, ratio / (1.0 + ratio), 1.0 / (1.0 + ratio))

    @property
    def ratio_present(self) -> float:
        return self.p_given_h / self.p_given_not_h

    @property
    def ratio_absent(self) -> float:
        return (1.0 - self.p_given_h) / (1.0 - self.p_given_not_h)


@dataclass(frozen=True)
class NaiveBayesModel:
    prior: float
    findings: Tuple[Finding, ...] = ()
    hypothesis: str = "H"

    def __post_init__(self):
        object.__setattr__(self, "prior", float(self.prior))
        object.__setattr__(self, "findings", tuple(self.findings))
        _check_open_unit(f"p({self.hypothesis})", self.prior)
        # Validates names and their uniqueness.
        Schema(self.hypothesis, self.names)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(f.name for f in self.findings)

    @property
    def schema(self) -> Schema:
        return Schema(self.hypothesis, self.names)

    def likelihood_ratios(self) -> List[Tuple[float, float]]:
        """Per finding (lambda(H,E), lambda(H,~E))."""
        return [(f.ratio_present, f.ratio_absent) for f in self.findings]

    def is_uninformative(self) -> bool:
        return all(f.p_given_h == f.p_given_not_h for f in self.findings)

    def with_findings(self, findings: Sequence[Finding]) -> "NaiveBayesModel":
        return NaiveBayesModel(self.prior, tuple(findings), self.hypothesis)

    @classmethod
    def from_ratios(
        cls, prior: float, ratios: Sequence[float], hypothesis: str = "H", prefix: str = "E"
    ) -> "NaiveBayesModel":
        findings = tuple(
            Finding.from_ratio(f"{prefix}{i + 1}", r) for i, r in enumerate(ratios)
        )
        return cls(prior, findings, hypothesis)


def joint_from_naive_bayes(
    model: NaiveBayesModel, max_evidence: int = constants.MAX_EVIDENCE_VARIABLES
) -> JointDistribution:
    """
    Expands a naive-Bayes model into its joint table, whose entry for
    (h, a1..an) is p(h) * prod_i p(a_i | h).
    """
    if len(model.findings) > max_evidence:
        raise exceptions.EvidenceCapError(
            f"{len(model.findings)} findings exceed the cap of {max_evidence}."
        )
    branches = []
    for p_h, column in ((model.prior, 0), (1.0 - model.prior, 1)):
        branch = np.array(p_h)
        for f in model.findings:
            p = f.p_given_h if column == 0 else f.p_given_not_h
            branch = np.multiply.outer(branch, np.array([p, 1.0 - p]))
        branches.append(branch)
    return joint_from_table(model.schema, np.stack(branches).reshape(-1), max_evidence)
