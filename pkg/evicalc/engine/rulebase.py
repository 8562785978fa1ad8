"""
Rulebases of single-evidence rules ``IF E THEN H`` and the case records
they are evaluated on.

Rulebase files are UTF-8 JSON documents::

    {"kind": "weight", "log_base": "e", "priors": {"H": 0.01},
     "rules": [{"id": "r1", "evidence": "E1", "hypothesis": "H", "strength": 4.595}]}

Case files hold ``{"cases": [{"id": "c1", "observed": {"E1": true, "E2": false}}]}``;
``observed`` may also list literals (``["E1", "~E2"]``). A document without
``cases`` is a single case, so ``{}`` is one case with nothing observed.
"""

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from evicalc import exceptions
from evicalc.calculi.certainty import certainty_factor
from evicalc.calculi.evoking import DEFAULT_THRESHOLDS, EvokingThresholds, evoking_strength
from evicalc.calculi.likelihood import parse_log_base
from evicalc.calculi.value import CF, EVOKING, LAMBDA, WEIGHT, CalculusValue
from evicalc.probability.joint import (
    EvidenceSet,
    JointDistribution,
    Proposition,
    conditional,
    likelihood_ratio,
)

# Calculi that fold rule strengths; a posterior has no combinator.
RULE_KINDS = (LAMBDA, WEIGHT, CF, EVOKING)


@dataclass(frozen=True)
class Rule:
    id: str
    evidence: Proposition
    hypothesis: Proposition
    strength: CalculusValue

    @property
    def kind(self) -> str:
        return self.strength.kind


@dataclass(frozen=True)
class Rulebase:
    """
    Rules of one strength kind. Each (evidence, hypothesis) pair appears at
    most once; ``priors`` maps hypothesis literals such as ``"H"`` to p(H)
    where known.
    """

    kind: str
    rules: Tuple[Rule, ...] = ()
    priors: Dict[str, float] = field(default_factory=dict)
    log_base: float = math.e

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "priors", dict(self.priors))
        if self.kind not in RULE_KINDS:
            raise exceptions.KindMismatchError(
                RULE_KINDS,
                self.kind,
                f"Rule strengths must be one of {', '.join(RULE_KINDS)}, got '{self.kind}'.",
            )
        seen_ids, seen_pairs = set(), set()
        for rule in self.rules:
            if rule.kind != self.kind:
                raise exceptions.KindMismatchError(
                    self.kind,
                    rule.kind,
                    f"Rule {rule.id} has a {rule.kind} strength in a {self.kind} rulebase.",
                )
            pair = (rule.evidence, rule.hypothesis)
            if pair in seen_pairs:
                raise exceptions.DuplicateRuleError(
                    f"More than one rule IF {rule.evidence} THEN {rule.hypothesis}."
                )
            if rule.id in seen_ids:
                raise exceptions.DuplicateRuleError(f"Rule id '{rule.id}' is used twice.")
            seen_pairs.add(pair)
            seen_ids.add(rule.id)
        for name, prior in self.priors.items():
            if not 0.0 < prior < 1.0:
                raise exceptions.ParameterRangeError(
                    f"Prior of {name} must lie strictly inside (0, 1), got {prior!r}."
                )

    @property
    def hypotheses(self) -> Tuple[str, ...]:
        names = [str(rule.hypothesis) for rule in self.rules] + list(self.priors)
        return tuple(dict.fromkeys(names))

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(dict.fromkeys(rule.evidence.variable for rule in self.rules))

    def with_rules(self, rules: Sequence[Rule]) -> "Rulebase":
        return Rulebase(self.kind, tuple(rules), self.priors, self.log_base)


@dataclass(frozen=True)
class CaseRecord:
    id: str
    observed: EvidenceSet = field(default_factory=EvidenceSet)


def rulebase_from_joint(
    dist: JointDistribution,
    kind: str,
    log_base=None,
    thresholds: EvokingThresholds = DEFAULT_THRESHOLDS,
    hypothesis: Optional[Proposition] = None,
) -> Rulebase:
    """
    Derives one rule per evidence literal from a model. Likelihood ratio
    and weight rules cover present and absent findings; certainty factor
    and evoking rules cover present findings only.

    Raises:
        UndefinedRatioError: A finding is impossible under H or under ~H.
        DegenerateBeliefError: p(H) is 0 or 1 and certainty factors are undefined.
    """
    hypothesis = dist.hypothesis if hypothesis is None else hypothesis
    base = parse_log_base(log_base)
    polarities = (True, False) if kind in (LAMBDA, WEIGHT) else (True,)
    rules = []
    for name in dist.evidence:
        for positive in polarities:
            literal = Proposition(name, positive)
            if kind == LAMBDA:
                strength = likelihood_ratio(dist, hypothesis, literal)
            elif kind == WEIGHT:
                strength = math.log(likelihood_ratio(dist, hypothesis, literal)) / math.log(base)
            elif kind == CF:
                strength = certainty_factor(dist, hypothesis, literal)
            elif kind == EVOKING:
                strength = evoking_strength(dist, hypothesis, literal, thresholds)
            else:
                raise exceptions.KindMismatchError(
                    RULE_KINDS, kind, f"Cannot derive {kind} rules from a model."
                )
            rules.append(
                Rule(f"{hypothesis}:{literal}", literal, hypothesis, CalculusValue(kind, strength))
            )
    return Rulebase(kind, tuple(rules), {str(hypothesis): conditional(dist, hypothesis)}, base)


# Per-variable states of a case: present, absent, unobserved.
_STATES = (True, False, None)


def _case(case_id: str, names: Sequence[str], states: Iterable[Optional[bool]]) -> CaseRecord:
    literals = [Proposition(name, state) for name, state in zip(names, states) if state is not None]
    return CaseRecord(case_id, EvidenceSet(frozenset(literals)))


def exhaustive_cases(names: Sequence[str]) -> List[CaseRecord]:
    """Every present/absent/unobserved combination of ``names``: 3^n cases."""
    combinations = list(itertools.product(_STATES, repeat=len(names)))
    width = max(4, len(str(len(combinations) - 1)))
    return [_case(f"case-{i:0{width}d}", names, states) for i, states in enumerate(combinations)]


def sample_cases(names: Sequence[str], count: int, rng: np.random.Generator) -> List[CaseRecord]:
    draws = rng.integers(0, len(_STATES), size=(count, len(names)))
    width = max(4, len(str(max(count - 1, 0))))
    return [
        _case(f"sample-{i:0{width}d}", names, (_STATES[d] for d in row))
        for i, row in enumerate(draws)
    ]


def _read_json(path, error):
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as err:
        raise error(f"{path} is not valid JSON: {err}") from err
    except UnicodeDecodeError as err:
        raise error(f"{path} is not UTF-8: {err}") from err


def rulebase_from_dict(data: dict) -> Rulebase:
    if not isinstance(data, dict):
        raise exceptions.RulebaseFileError("A rulebase must be a JSON object.")
    try:
        kind = data["kind"]
        rules = tuple(
            Rule(
                str(entry.get("id", f"r{i + 1}")),
                Proposition.parse(entry["evidence"]),
                Proposition.parse(entry["hypothesis"]),
                CalculusValue(kind, entry["strength"]),
            )
            for i, entry in enumerate(data.get("rules", []))
        )
        priors = {str(k): float(v) for k, v in data.get("priors", {}).items()}
    except (KeyError, TypeError, AttributeError, ValueError) as err:
        raise exceptions.RulebaseFileError(f"Malformed rulebase: missing or invalid {err}.") from err
    return Rulebase(kind, rules, priors, parse_log_base(data.get("log_base")))


def rulebase_to_dict(rulebase: Rulebase) -> dict:
    data = {
        "kind": rulebase.kind,
        "priors": dict(rulebase.priors),
        "rules": [
            {
                "id": rule.id,
                "evidence": str(rule.evidence),
                "hypothesis": str(rule.hypothesis),
                "strength": rule.strength.value,
            }
            for rule in rulebase.rules
        ],
    }
    if rulebase.kind == WEIGHT:
        data["log_base"] = rulebase.log_base
    return data


def load_rulebase(path) -> Rulebase:
    """
    Reads a rulebase file.

    Raises:
        RulebaseFileError: The file is not valid JSON or not a rulebase document.
        KindMismatchError: Rule strengths mix kinds.
        DuplicateRuleError: An (evidence, hypothesis) pair or rule id repeats.
    """
    return rulebase_from_dict(_read_json(path, exceptions.RulebaseFileError))


def dump_rulebase(path, rulebase: Rulebase):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(rulebase_to_dict(rulebase), f, indent=2)
        f.write("\n")


def _observed(value) -> EvidenceSet:
    if isinstance(value, dict):
        literals = []
        for name, state in value.items():
            if state is None:
                continue
            if not isinstance(state, bool):
                raise exceptions.CaseFileError(
                    f"Finding {name} must be true, false or null, got {state!r}."
                )
            literals.append(Proposition(str(name), state))
        return EvidenceSet(frozenset(literals))
    if isinstance(value, list):
        return EvidenceSet.of(*[str(v) for v in value])
    if isinstance(value, str):
        return EvidenceSet.parse(value)
    raise exceptions.CaseFileError(f"Cannot read observed findings from {value!r}.")


def cases_from_dict(data) -> List[CaseRecord]:
    if not isinstance(data, dict):
        raise exceptions.CaseFileError("A case file must be a JSON object.")
    entries = data["cases"] if "cases" in data else [data]
    if not isinstance(entries, list):
        raise exceptions.CaseFileError("'cases' must be a list.")
    cases, seen = [], set()
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict):
            raise exceptions.CaseFileError(f"Case {i} must be a JSON object.")
        case_id = str(entry.get("id", f"case-{i}"))
        if case_id in seen:
            raise exceptions.CaseFileError(f"Case id '{case_id}' is used twice.")
        seen.add(case_id)
        try:
            cases.append(CaseRecord(case_id, _observed(entry.get("observed", {}))))
        except exceptions.InconsistentEvidenceError as err:
            raise exceptions.CaseFileError(f"Case {case_id}: {err}") from err
    return cases


def load_cases(path) -> List[CaseRecord]:
    """
    Reads a case file.

    Raises:
        CaseFileError: The file is malformed or a case observes a finding in both polarities.
    """
    return cases_from_dict(_read_json(path, exceptions.CaseFileError))


def cases_to_dict(cases: Sequence[CaseRecord]) -> dict:
    return {
        "cases": [
            {"id": case.id, "observed": {lit.variable: lit.positive for lit in case.observed}}
            for case in cases
        ]
    }
