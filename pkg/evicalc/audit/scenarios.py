"""Scenario families: the universes over which the update axioms are quantified."""

import itertools
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from evicalc import constants
from evicalc import exceptions
from evicalc.probability.joint import (
    EvidenceSet,
    JointDistribution,
    Proposition,
    Schema,
    joint_from_table,
    literal_assignments,
)
from evicalc.probability.naivebayes import (
    Finding,
    NaiveBayesModel,
    joint_from_naive_bayes,
)

logger = logging.getLogger(__name__)

CI_GRID = "ci-grid"
CI_RANDOM = "ci-random"
GENERAL_RANDOM = "general-random"
EXPLICIT = "explicit"

FAMILY_KINDS = (CI_GRID, CI_RANDOM, GENERAL_RANDOM, EXPLICIT)


@dataclass(frozen=True)
class Scenario:
    id: str
    dist: JointDistribution
    model: Optional[NaiveBayesModel] = None

    @property
    def hypothesis(self) -> Proposition:
        return self.dist.hypothesis


@dataclass(frozen=True)
class ScenarioFamily:
    """
    Args:
        kind (str): One of ``ci-grid``, ``ci-random``, ``general-random``, ``explicit``.
        findings (int): Evidence arity n of generated scenarios.
        samples (int): Number of random scenarios.
        seed (int): Seed of the random families.
        priors, ratios: Grid axes of ``ci-grid``.
        models: The distributions or naive-Bayes models of ``explicit``.
    """

    kind: str
    findings: int = constants.DEFAULT_FINDINGS
    samples: int = constants.DEFAULT_SAMPLES
    seed: Optional[int] = None
    priors: Tuple[float, ...] = constants.CI_GRID_PRIORS
    ratios: Tuple[float, ...] = constants.CI_GRID_RATIOS
    models: Tuple[Union[JointDistribution, NaiveBayesModel], ...] = field(default=())

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise exceptions.FamilyNameError(
                f"No scenario family named '{self.kind}'. Choose from {', '.join(FAMILY_KINDS)}."
            )
        object.__setattr__(self, "priors", tuple(self.priors))
        object.__setattr__(self, "ratios", tuple(self.ratios))
        object.__setattr__(self, "models", tuple(self.models))
        if self.findings < 0 or self.findings > constants.MAX_EVIDENCE_VARIABLES:
            raise exceptions.EvidenceCapError(
                f"Families need 0..{constants.MAX_EVIDENCE_VARIABLES} findings, got {self.findings}."
            )

    @property
    def is_random(self) -> bool:
        return self.kind in (CI_RANDOM, GENERAL_RANDOM)

    def describe(self) -> dict:
        description = {"kind": self.kind}
        if self.kind == EXPLICIT:
            description["models"] = len(self.models)
            return description
        description["findings"] = self.findings
        if self.kind == CI_GRID:
            description["priors"] = list(self.priors)
            description["ratios"] = list(self.ratios)
        else:
            description["samples"] = self.samples
            description["seed"] = self.seed
        return description


def ci_grid(findings=constants.DEFAULT_FINDINGS, priors=None, ratios=None) -> ScenarioFamily:
    return ScenarioFamily(
        CI_GRID,
        findings=findings,
        priors=constants.CI_GRID_PRIORS if priors is None else priors,
        ratios=constants.CI_GRID_RATIOS if ratios is None else ratios,
    )


def ci_random(seed=None, samples=constants.DEFAULT_SAMPLES, findings=constants.DEFAULT_FINDINGS):
    seed = constants.DEFAULT_SEED if seed is None else seed
    return ScenarioFamily(CI_RANDOM, findings=findings, samples=samples, seed=seed)


def general_random(seed=None, samples=constants.DEFAULT_SAMPLES, findings=constants.DEFAULT_FINDINGS):
    seed = constants.DEFAULT_SEED if seed is None else seed
    return ScenarioFamily(GENERAL_RANDOM, findings=findings, samples=samples, seed=seed)


def explicit(models: Sequence[Union[JointDistribution, NaiveBayesModel]]) -> ScenarioFamily:
    models = tuple(models)
    findings = max(
        (m.schema.n if isinstance(m, JointDistribution) else len(m.findings) for m in models),
        default=0,
    )
    return ScenarioFamily(EXPLICIT, findings=findings, models=models)


def create_family(kind, seed=None, samples=constants.DEFAULT_SAMPLES,
                  findings=constants.DEFAULT_FINDINGS, models=()) -> ScenarioFamily:
    if kind == CI_GRID:
        return ci_grid(findings=findings)
    if kind == CI_RANDOM:
        return ci_random(seed, samples, findings)
    if kind == GENERAL_RANDOM:
        return general_random(seed, samples, findings)
    if kind == EXPLICIT:
        return explicit(models)
    raise exceptions.FamilyNameError(
        f"No scenario family named '{kind}'. Choose from {', '.join(FAMILY_KINDS)}."
    )


def mycin_counterexample_model() -> NaiveBayesModel:
    """p(H) = .01 and two conditionally independent findings of ratio 99."""
    finding = dict(
        p_given_h=constants.COUNTEREXAMPLE_SENSITIVITY,
        p_given_not_h=constants.COUNTEREXAMPLE_FALSE_POSITIVE,
    )
    return NaiveBayesModel(
        constants.COUNTEREXAMPLE_PRIOR,
        (Finding("E1", **finding), Finding("E2", **finding)),
    )


def _finding_names(n: int) -> Tuple[str, ...]:
    return tuple(f"E{i + 1}" for i in range(n))


def _rng(family: ScenarioFamily) -> np.random.Generator:
    seed = constants.DEFAULT_SEED if family.seed is None else family.seed
    return np.random.default_rng(seed)


def generate_scenarios(family: ScenarioFamily) -> List[Scenario]:
    """
    Expands a family into scenarios ordered by id. Identical families
    yield identical scenarios bit for bit.

    Raises:
        EmptyFamilyError: The family generates no scenario.
    """
    scenarios = []
    if family.kind == CI_GRID:
        for prior in family.priors:
            for ratios in itertools.product(family.ratios, repeat=family.findings):
                model = NaiveBayesModel.from_ratios(prior, ratios)
                scenarios.append((model, joint_from_naive_bayes(model)))
    elif family.kind == CI_RANDOM:
        rng = _rng(family)
        low, high = constants.RANDOM_PARAMETER_RANGE
        for _ in range(family.samples):
            params = rng.uniform(low, high, size=1 + 2 * family.findings)
            findings = tuple(
                Finding(name, params[1 + 2 * i], params[2 + 2 * i])
                for i, name in enumerate(_finding_names(family.findings))
            )
            model = NaiveBayesModel(params[0], findings)
            scenarios.append((model, joint_from_naive_bayes(model)))
    elif family.kind == GENERAL_RANDOM:
        rng = _rng(family)
        schema = Schema("H", _finding_names(family.findings))
        size = 2 ** (family.findings + 1)
        for _ in range(family.samples):
            scenarios.append((None, joint_from_table(schema, rng.dirichlet(np.ones(size)))))
    else:
        for model in family.models:
            if isinstance(model, NaiveBayesModel):
                scenarios.append((model, joint_from_naive_bayes(model)))
            else:
                scenarios.append((None, model))

    if not scenarios:
        raise exceptions.EmptyFamilyError(f"Family {family.describe()} generates no scenario.")
    width = max(4, len(str(len(scenarios) - 1)))
    logger.debug(f"Generated {len(scenarios)} scenarios for family {family.kind}.")
    return [
        Scenario(f"{family.kind}/{i:0{width}d}", dist, model)
        for i, (model, dist) in enumerate(scenarios)
    ]


def single_literals(variables: Sequence[str]) -> List[Proposition]:
    """Every single literal, positive before negated, in variable order."""
    return [Proposition(name, positive) for name in variables for positive in (True, False)]


def conjunctions(variables: Sequence[str]) -> List[EvidenceSet]:
    """Every nonempty conjunction of literals over subsets of ``variables``."""
    result = []
    for size in range(1, len(variables) + 1):
        for subset in itertools.combinations(variables, size):
            result.extend(literal_assignments(subset))
    return result


def modularity_pairs(schema: Schema) -> List[Tuple[EvidenceSet, EvidenceSet]]:
    """(E, e) pairs: E a single evidence literal, e a nonempty conjunction over the other findings."""
    pairs = []
    for target in single_literals(schema.evidence):
        others = [name for name in schema.evidence if name != target.variable]
        for context in conjunctions(others):
            pairs.append((EvidenceSet.coerce(target), context))
    return pairs


def update_triples(schema: Schema) -> List[Tuple[Proposition, Proposition, EvidenceSet]]:
    """(E1, E2, e): ordered literals on distinct findings, e empty or one literal on another finding."""
    triples = []
    for first in single_literals(schema.evidence):
        for second in single_literals(schema.evidence):
            if second.variable == first.variable:
                continue
            contexts = [EvidenceSet()] + [
                EvidenceSet.coerce(lit)
                for lit in single_literals(schema.evidence)
                if lit.variable not in (first.variable, second.variable)
            ]
            for context in contexts:
                triples.append((first, second, context))
    return triples
