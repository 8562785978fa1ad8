import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Dict, List, Optional

from evicalc.loggerutil import format_probability, package_version
from evicalc.probability.joint import (
    EvidenceSet,
    JointDistribution,
    Proposition,
    Schema,
    joint_from_table,
)

HOLDS = "holds"
VIOLATED = "violated"

MODULARITY = "modularity"
UPDATE_PROPERTY = "update-property"
MARGINAL_INDEPENDENCE = "marginal-independence"
CF_LIMIT = "cf-limit"

AXIOMS = (MODULARITY, UPDATE_PROPERTY, MARGINAL_INDEPENDENCE, CF_LIMIT)

SCHEMA_VERSION = 1
SCHEMA_FILE = "report.schema.json"


@dataclass
class Witness:
    """A concrete scenario exhibiting a reported value; replayable from its table."""

    scenario: str
    hypothesis: str
    evidence: str
    context: str
    observed: Dict[str, float]
    magnitude: float
    schema: Dict[str, Any]
    table: List[float]
    second: Optional[str] = None
    partner: Optional["Witness"] = None

    @classmethod
    def build(cls, scenario_id, dist: JointDistribution, hypothesis: Proposition,
              evidence, context, observed, magnitude, second=None, partner=None):
        return cls(
            scenario=scenario_id,
            hypothesis=str(hypothesis),
            evidence=str(EvidenceSet.coerce(evidence)),
            context=str(EvidenceSet.coerce(context)),
            observed={k: float(v) for k, v in observed.items()},
            magnitude=float(magnitude),
            schema={"hypothesis": dist.schema.hypothesis, "evidence": list(dist.schema.evidence)},
            table=list(dist.entries()),
            second=None if second is None else str(second),
            partner=partner,
        )

    def distribution(self) -> JointDistribution:
        schema = Schema(self.schema["hypothesis"], tuple(self.schema["evidence"]))
        return joint_from_table(schema, self.table)

    def hypothesis_literal(self) -> Proposition:
        return Proposition.parse(self.hypothesis)

    def evidence_set(self) -> EvidenceSet:
        return EvidenceSet.parse(self.evidence)

    def context_set(self) -> EvidenceSet:
        return EvidenceSet.parse(self.context)

    def second_literal(self) -> Optional[Proposition]:
        return None if self.second is None else Proposition.parse(self.second)

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "scenario": self.scenario,
            "hypothesis": self.hypothesis,
            "evidence": self.evidence,
            "context": self.context,
            "observed": dict(self.observed),
            "magnitude": self.magnitude,
            "schema": dict(self.schema),
            "table": list(self.table),
        }
        if self.second is not None:
            data["second"] = self.second
        if self.partner is not None:
            data["partner"] = self.partner.to_dict()
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Witness":
        partner = data.get("partner")
        return cls(
            scenario=data["scenario"],
            hypothesis=data["hypothesis"],
            evidence=data["evidence"],
            context=data["context"],
            observed=dict(data["observed"]),
            magnitude=data["magnitude"],
            schema=dict(data["schema"]),
            table=list(data["table"]),
            second=data.get("second"),
            partner=None if partner is None else cls.from_dict(partner),
        )

    def summary(self) -> str:
        what = f"U({self.hypothesis}, {self.evidence}"
        if self.second is not None:
            what = f"U({self.hypothesis}, {self.evidence} then {self.second}"
        observed = ", ".join(f"{k} = {_fmt(v)}" for k, v in self.observed.items())
        line = f"{self.scenario}: {what}, e = {self.context}): {observed}; magnitude {_fmt(self.magnitude)}"
        if self.partner is not None:
            line += f"\n      against {self.partner.summary()}"
        return line


def _fmt(value) -> str:
    if isinstance(value, float):
        return format_probability(value) if abs(value) <= 1 else f"{value:.6g}"
    return str(value)


@dataclass
class AuditReport:
    """
    Verdict of one axiom check. A violated verdict always carries ``worst``;
    counts always include ``skipped``.
    """

    measure: str
    axiom: str
    verdict: str
    tolerances: Dict[str, float]
    family: Dict[str, Any]
    counts: Dict[str, int]
    seed: Optional[int] = None
    max_deviation: Optional[float] = None
    worst: Optional[Witness] = None
    witnesses: List[Witness] = field(default_factory=list)
    skipped: List[Dict[str, str]] = field(default_factory=list)
    quantities: Dict[str, float] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)
    config: Dict[str, Any] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "evicalc_version": package_version(),
            "measure": self.measure,
            "axiom": self.axiom,
            "verdict": self.verdict,
            "tolerances": dict(self.tolerances),
            "family": dict(self.family),
            "seed": self.seed,
            "counts": dict(self.counts),
            "max_deviation": self.max_deviation,
            "worst": None if self.worst is None else self.worst.to_dict(),
            "witnesses": [w.to_dict() for w in self.witnesses],
            "skipped": [dict(s) for s in self.skipped],
            "quantities": dict(self.quantities),
            "notes": list(self.notes),
            "details": self.details,
            "config": dict(self.config),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, allow_nan=False)

    def to_text(self) -> str:
        verdict = "holds within tol" if self.holds else "violated"
        tolerances = ", ".join(f"{k} = {v:g}" for k, v in sorted(self.tolerances.items()))
        lines = [
            f"Audit of {self.axiom} for measure '{self.measure}'",
            f"  family:    {_family_text(self.family)}",
            f"  tolerance: {tolerances}",
            f"  scenarios: {_counts_text(self.counts)}",
            f"  verdict:   {verdict}",
        ]
        if self.max_deviation is not None:
            lines.append(f"  max deviation: {self.max_deviation:.6g}")
        if self.quantities:
            lines.append("  quantities:")
            width = max(len(k) for k in self.quantities)
            for key, value in self.quantities.items():
                lines.append(f"    {key:<{width}}  {_fmt(value)}")
        if self.worst is not None:
            lines.append("  worst witness:")
            lines.append(f"    {self.worst.summary()}")
        extra = [w for w in self.witnesses if w is not self.worst]
        if extra:
            lines.append(f"  witnesses ({len(self.witnesses)} listed):")
            lines.extend(f"    {w.summary()}" for w in self.witnesses)
        if self.skipped:
            lines.append("  skipped:")
            lines.extend(f"    {s['scenario']}: {s['reason']}" for s in self.skipped)
        if self.notes:
            lines.append("  notes:")
            lines.extend(f"    - {note}" for note in self.notes)
        return "\n".join(lines) + "\n"


def _family_text(family: Dict[str, Any]) -> str:
    return ", ".join(f"{k}={v}" for k, v in family.items())


def _counts_text(counts: Dict[str, int]) -> str:
    return ", ".join(f"{k} {v}" for k, v in counts.items())


def load_report_schema() -> Dict[str, Any]:
    """The JSON Schema every emitted report validates against."""
    text = resources.files("evicalc.audit").joinpath(SCHEMA_FILE).read_text(encoding="utf-8")
    return json.loads(text)


def report_from_dict(data: Dict[str, Any]) -> AuditReport:
    worst = data.get("worst")
    return AuditReport(
        measure=data["measure"],
        axiom=data["axiom"],
        verdict=data["verdict"],
        tolerances=dict(data["tolerances"]),
        family=dict(data["family"]),
        counts=dict(data["counts"]),
        seed=data.get("seed"),
        max_deviation=data.get("max_deviation"),
        worst=None if worst is None else Witness.from_dict(worst),
        witnesses=[Witness.from_dict(w) for w in data.get("witnesses", [])],
        skipped=list(data.get("skipped", [])),
        quantities=dict(data.get("quantities", {})),
        notes=list(data.get("notes", [])),
        details=dict(data.get("details", {})),
        config=dict(data.get("config", {})),
    )
