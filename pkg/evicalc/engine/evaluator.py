"""Folding rule strengths over cases, and comparing the result with exact enumeration."""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Union

import numpy as np
import pandas as pd

from evicalc import constants
from evicalc import exceptions
from evicalc.calculi.certainty import certainty_factor, mycin_combine
from evicalc.calculi.evoking import DEFAULT_THRESHOLDS, EvokingThresholds, internist_score
from evicalc.calculi.likelihood import (
    combine_lambdas,
    combine_weights,
    parse_log_base,
    posterior_from_lambda,
    posterior_from_weight,
)
from evicalc.calculi.value import CF, EVOKING, IDENTITY, LAMBDA, WEIGHT, CalculusValue
from evicalc.engine.rulebase import (
    CaseRecord,
    Rulebase,
    exhaustive_cases,
    rulebase_from_joint,
    sample_cases,
)
from evicalc.probability.joint import (
    EvidenceSet,
    JointDistribution,
    conditional,
    likelihood_ratio,
)
from evicalc.probability.modelfile import Model, as_joint

logger = logging.getLogger(__name__)

COLUMNS = [
    "model",
    "case",
    "calculus",
    "value",
    "posterior",
    "ground_truth",
    "reference",
    "abs_error",
    "rank_discordance",
    "top_agrees",
]

CALCULI = (LAMBDA, WEIGHT, CF, EVOKING)

CF_ABSENT_NOTE = (
    "Certainty factor rules fire on present findings only; explicitly absent "
    "findings contribute nothing on the cf path."
)


def _combine(kind: str, current: Union[float, int], strength: Union[float, int]):
    if kind == LAMBDA:
        return combine_lambdas(current, strength)
    if kind == WEIGHT:
        return combine_weights([current, strength])
    if kind == CF:
        return mycin_combine(current, strength)
    return internist_score([strength]) + current


def _check_accumulated(kind: str, value: Union[float, int]):
    """Accumulated values obey their calculus range; evoking scores are nonnegative integers."""
    if kind == EVOKING:
        if value < 0 or int(value) != value:
            raise exceptions.CalculusRangeError(
                f"Evoking score must be a nonnegative integer, got {value!r}."
            )
        return
    CalculusValue(kind, value)


@dataclass
class BeliefState:
    """
    Per hypothesis: the accumulated value of the folded rule strengths,
    the rules that fired, and, where a prior is known and the calculus
    allows it, the reconstructed posterior.
    """

    kind: str
    values: Dict[str, Union[float, int]] = field(default_factory=dict)
    posteriors: Dict[str, Optional[float]] = field(default_factory=dict)
    fired: Dict[str, List[str]] = field(default_factory=dict)

    def value(self, hypothesis: str) -> Union[float, int]:
        return self.values[hypothesis]

    def posterior(self, hypothesis: str) -> Optional[float]:
        return self.posteriors.get(hypothesis)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "hypotheses": {
                h: {
                    "value": self.values[h],
                    "posterior": self.posteriors.get(h),
                    "fired": list(self.fired.get(h, [])),
                }
                for h in self.values
            },
        }


def _reconstruct(kind: str, prior: Optional[float], value, log_base: float) -> Optional[float]:
    if prior is None:
        return None
    if kind == LAMBDA:
        return posterior_from_lambda(prior, value)
    if kind == WEIGHT:
        return posterior_from_weight(prior, value, log_base)
    return None


def evaluate_case(
    rulebase: Rulebase,
    case: CaseRecord,
    calculus: Optional[str] = None,
    prior: Union[float, Mapping[str, float], None] = None,
) -> BeliefState:
    """
    Folds the strengths of every rule whose evidence literal is observed in
    ``case`` with the calculus combinator: product for lambda, sum for
    weights, mycin_combine for certainty factors and integer sum for evoking
    strengths.

    Args:
        rulebase (Rulebase): Rules of a single strength kind.
        case (CaseRecord): Observed findings; unobserved findings contribute nothing.
        calculus (str, optional): Expected strength kind. Defaults to the rulebase kind.
        prior (float or dict, optional): p(H), or p(H) per hypothesis. Defaults to
            the rulebase priors.

    Returns:
        BeliefState: Accumulated values, and posteriors for lambda and weights.

    Raises:
        KindMismatchError: ``calculus`` is not the kind of the rule strengths.
        UnknownVariableError: The case observes a finding the rulebase never mentions.
        ContradictoryCertaintyError: Certainty factors +1 and -1 meet.
    """
    kind = rulebase.kind if calculus is None else calculus
    if kind != rulebase.kind:
        raise exceptions.KindMismatchError(kind, rulebase.kind)
    unknown = sorted(case.observed.variables - set(rulebase.variables))
    if unknown:
        raise exceptions.UnknownVariableError(
            f"Case {case.id} observes {', '.join(unknown)}, which no rule mentions."
        )

    if prior is None:
        priors = dict(rulebase.priors)
    elif isinstance(prior, Mapping):
        priors = dict(prior)
    else:
        priors = {h: float(prior) for h in rulebase.hypotheses}

    state = BeliefState(kind)
    for hypothesis in rulebase.hypotheses:
        state.values[hypothesis] = IDENTITY[kind]
        state.fired[hypothesis] = []
    for rule in rulebase.rules:
        if rule.evidence not in case.observed.literals:
            continue
        hypothesis = str(rule.hypothesis)
        accumulated = _combine(kind, state.values[hypothesis], rule.strength.value)
        _check_accumulated(kind, accumulated)
        state.values[hypothesis] = accumulated
        state.fired[hypothesis].append(rule.id)
    for hypothesis in rulebase.hypotheses:
        state.posteriors[hypothesis] = _reconstruct(
            kind, priors.get(hypothesis), state.values[hypothesis], rulebase.log_base
        )
    logger.debug(f"Case {case.id}: {state.values}")
    return state


def ground_truth(
    model: Union[Model, Sequence[Model]], case: CaseRecord
) -> Dict[str, float]:
    """
    Posterior of each model's hypothesis given the observed findings, by
    enumeration of the joint table.

    Raises:
        UnknownVariableError: A model lacks a finding the case observes.
        ConditioningOnZeroMassError: The observed findings have probability zero.
    """
    models = [model] if not isinstance(model, (list, tuple)) else list(model)
    result = {}
    for m in models:
        dist = as_joint(m)
        for name in case.observed.variables:
            dist.schema.axis(name)
        result[str(dist.hypothesis)] = conditional(dist, dist.hypothesis, case.observed)
    return result


def _reference(kind: str, dist: JointDistribution, observed: EvidenceSet, log_base: float):
    """The calculus-native value of the whole observed conjunction, by enumeration."""
    hypothesis = dist.hypothesis
    if kind == EVOKING:
        return None
    if not observed:
        return IDENTITY[kind]
    if kind == CF:
        return certainty_factor(dist, hypothesis, observed)
    ratio = likelihood_ratio(dist, hypothesis, observed)
    return ratio if kind == LAMBDA else math.log(ratio) / math.log(log_base)


def _discordance(values: np.ndarray, truth: np.ndarray) -> np.ndarray:
    """Per case, the fraction of other cases ordered strictly oppositely by value and truth."""
    m = len(values)
    if m < 2:
        return np.zeros(m)

    def signs(x):
        diff = x[:, None] - x[None, :]
        scale = np.maximum(1.0, np.maximum(np.abs(x[:, None]), np.abs(x[None, :])))
        return np.where(np.abs(diff) <= constants.RANK_TIE_TOLERANCE * scale, 0.0, np.sign(diff))

    opposite = signs(values) * signs(truth) < 0
    return opposite.sum(axis=1) / (m - 1)


def default_cases(
    names: Sequence[str],
    samples: int = constants.DEFAULT_SAMPLES,
    seed: int = constants.DEFAULT_SEED,
) -> List[CaseRecord]:
    """Exhaustive cases for a few findings, seeded samples beyond."""
    if len(names) <= constants.EXHAUSTIVE_CASE_LIMIT:
        return exhaustive_cases(names)
    return sample_cases(names, samples, np.random.default_rng(seed))


def compare_calculi(
    models: Union[Model, Sequence[Model]],
    cases: Optional[Sequence[CaseRecord]] = None,
    calculi: Sequence[str] = CALCULI,
    log_base=None,
    thresholds: EvokingThresholds = DEFAULT_THRESHOLDS,
    samples: int = constants.DEFAULT_SAMPLES,
    seed: int = constants.DEFAULT_SEED,
) -> pd.DataFrame:
    """
    Builds the divergence table: one row per model, case and calculus with
    the engine's value, its reconstructed posterior where one exists, the
    enumerated ground truth and the errors between them.

    With several single-hypothesis models the ``top_agrees`` column says
    whether the calculus ranks the same hypothesis first as the ground truth.
    """
    models = [models] if not isinstance(models, (list, tuple)) else list(models)
    dists = [as_joint(m) for m in models]
    base = parse_log_base(log_base)
    if cases is None:
        cases = default_cases(dists[0].evidence, samples, seed)
    for kind in calculi:
        if kind not in CALCULI:
            raise exceptions.KindMismatchError(
                CALCULI, kind, f"No rule calculus named '{kind}'. Choose from {', '.join(CALCULI)}."
            )

    rows = []
    for dist in dists:
        name = str(dist.hypothesis)
        rulebases = {kind: rulebase_from_joint(dist, kind, base, thresholds) for kind in calculi}
        for case in cases:
            truth = ground_truth(dist, case)[name]
            for kind in calculi:
                state = evaluate_case(rulebases[kind], case)
                value = state.value(name)
                posterior = state.posterior(name)
                reference = _reference(kind, dist, case.observed, base)
                if posterior is not None:
                    error = abs(posterior - truth)
                elif reference is not None:
                    error = abs(value - reference)
                else:
                    error = None
                rows.append(
                    {
                        "model": name,
                        "case": case.id,
                        "calculus": kind,
                        "value": value,
                        "posterior": posterior,
                        "ground_truth": truth,
                        "reference": reference,
                        "abs_error": error,
                        "rank_discordance": 0.0,
                        "top_agrees": None,
                    }
                )

    table = pd.DataFrame(rows, columns=COLUMNS)
    if table.empty:
        table.attrs["notes"] = []
        return table
    for _, group in table.groupby(["model", "calculus"], sort=False):
        table.loc[group.index, "rank_discordance"] = _discordance(
            group["value"].to_numpy(dtype=float), group["ground_truth"].to_numpy(dtype=float)
        )
    if len(dists) > 1:
        for _, group in table.groupby(["case", "calculus"], sort=False):
            top_value = group.loc[group["value"].astype(float).idxmax(), "model"]
            top_truth = group.loc[group["ground_truth"].astype(float).idxmax(), "model"]
            table.loc[group.index, "top_agrees"] = bool(top_value == top_truth)
    table.attrs["notes"] = [CF_ABSENT_NOTE] if CF in calculi else []
    logger.info(f"Compared {len(calculi)} calculi on {len(cases)} cases of {len(dists)} model(s).")
    return table
