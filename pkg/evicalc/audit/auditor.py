"""
Checks of update measures against the modularity property and the basic
update property, plus the derived results about posteriors and certainty
factors. Scenarios are evaluated in id order and reports are assembled by
an ordered reduction, so identical inputs give identical reports.
"""

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from evicalc import constants
from evicalc import exceptions
from evicalc.audit import scenarios as families
from evicalc.audit.report import (
    CF_LIMIT,
    HOLDS,
    MARGINAL_INDEPENDENCE,
    MODULARITY,
    UPDATE_PROPERTY,
    VIOLATED,
    AuditReport,
    Witness,
)
from evicalc.audit.scenarios import (
    Scenario,
    ScenarioFamily,
    conjunctions,
    generate_scenarios,
    modularity_pairs,
    single_literals,
    update_triples,
)
from evicalc.calculi.certainty import (
    CertaintyFactorMeasure,
    certainty_factor,
    certainty_factor_conditional,
    mycin_combine,
)
from evicalc.calculi.evoking import DEFAULT_THRESHOLDS, EvokingStrengthMeasure, EvokingThresholds
from evicalc.calculi.measure import UpdateMeasure
from evicalc.calculi.posterior import PosteriorMeasure
from evicalc.calculi.registry import create_measure
from evicalc.probability.joint import (
    EvidenceSet,
    JointDistribution,
    Proposition,
    conditional,
    likelihood_ratio,
)
from evicalc.probability.naivebayes import Finding, joint_from_naive_bayes

logger = logging.getLogger(__name__)

SKIPPABLE = (
    exceptions.ConditioningOnZeroMassError,
    exceptions.DegenerateBeliefError,
    exceptions.UndefinedRatioError,
)

# Open interval searched when matching a finding's sensitivity.
_SENSITIVITY_RANGE = (1e-9, 1.0 - 1e-9)


class _Skip(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


_PROJECTION_ERRORS = (
    _Skip,
    exceptions.CalculusRangeError,
    exceptions.ParameterRangeError,
) + SKIPPABLE


def _require_mass(dist: JointDistribution, hypothesis: Proposition, literals) -> None:
    """Skips the scenario unless both h e and ~h e carry conditioning mass."""
    literals = EvidenceSet.coerce(literals)
    for h in (hypothesis, hypothesis.negate()):
        conjunction = literals.union(h)
        if dist.mass(conjunction) < constants.ZERO_MASS:
            raise _Skip(f"p({conjunction}) < {constants.ZERO_MASS:g}")


def _scan(scenarios: List[Scenario], evaluate: Callable[[Scenario], object]):
    """Evaluates every scenario; degenerate ones are skipped, counted and listed."""
    tested, skipped = [], []
    for scenario in scenarios:
        try:
            rows = evaluate(scenario)
        except _Skip as skip:
            reason = skip.reason
        except SKIPPABLE as err:
            reason = f"{type(err).__name__}: {err}"
        else:
            tested.append((scenario, rows))
            continue
        logger.debug(f"Skipped scenario {scenario.id}: {reason}")
        skipped.append({"scenario": scenario.id, "reason": reason})
    return tested, skipped


def _base_counts(scenarios, tested, skipped) -> Dict[str, int]:
    return {"scenarios": len(scenarios), "tested": len(tested), "skipped": len(skipped)}


def _verdict(violated: bool) -> str:
    return VIOLATED if violated else HOLDS


@dataclass(frozen=True)
class _Pair:
    evidence: EvidenceSet
    context: EvidenceSet
    with_context: float
    without_context: float

    @property
    def deviation(self) -> float:
        return abs(self.with_context - self.without_context)


def _modularity_rows(measure: UpdateMeasure, scenario: Scenario) -> List[_Pair]:
    dist, hypothesis = scenario.dist, scenario.hypothesis
    rows = []
    for evidence, context in modularity_pairs(dist.schema):
        _require_mass(dist, hypothesis, evidence.union(context))
        rows.append(
            _Pair(
                evidence,
                context,
                measure(dist, hypothesis, evidence, context),
                measure(dist, hypothesis, evidence),
            )
        )
    return rows


def _modularity_witness(scenario: Scenario, pair: _Pair) -> Witness:
    return Witness.build(
        scenario.id,
        scenario.dist,
        scenario.hypothesis,
        pair.evidence,
        pair.context,
        {"U(H,E,e)": pair.with_context, "U(H,E)": pair.without_context},
        pair.deviation,
    )


def check_modularity(
    measure: UpdateMeasure,
    family: ScenarioFamily,
    tol: float = constants.MODULARITY_TOLERANCE,
) -> AuditReport:
    """
    Compares U(H,E,e) with U(H,E) for every scenario of ``family`` and every
    single evidence literal E with a nonempty context e over the other findings.

    Args:
        measure (UpdateMeasure): The update measure under audit.
        family (ScenarioFamily): Scenarios to quantify over.
        tol (float): Largest accepted |U(H,E,e) - U(H,E)|.

    Returns:
        AuditReport: Verdict ``holds`` iff the maximal deviation is at most ``tol``.
    """
    scenarios = generate_scenarios(family)
    tested, skipped = _scan(scenarios, lambda s: _modularity_rows(measure, s))

    comparisons = 0
    max_deviation = 0.0
    violations = []
    for scenario, rows in tested:
        for pair in rows:
            comparisons += 1
            max_deviation = max(max_deviation, pair.deviation)
            if pair.deviation > tol:
                violations.append((scenario, pair))

    worst = None
    if violations:
        scenario, pair = max(violations, key=lambda v: v[1].deviation)
        worst = _modularity_witness(scenario, pair)
    witnesses = [_modularity_witness(s, p) for s, p in violations[: constants.MAX_WITNESSES]]

    counts = _base_counts(scenarios, tested, skipped)
    counts.update(comparisons=comparisons, violations=len(violations))
    notes = []
    if violations:
        notes.append(
            f"U(H,E,e) differs from U(H,E) by more than {tol:g} in "
            f"{len(violations)} of {comparisons} comparisons, so the update depends on prior evidence."
        )
    elif comparisons == 0:
        notes.append("No (E, e) pair with a nonempty context exists in this family.")
    logger.info(
        f"Modularity of {measure.name} over {family.kind}: {_verdict(bool(violations))}, "
        f"max deviation {max_deviation:.3g}."
    )
    return AuditReport(
        measure=measure.name,
        axiom=MODULARITY,
        verdict=_verdict(bool(violations)),
        tolerances={"tol": tol},
        family=family.describe(),
        seed=family.seed,
        counts=counts,
        max_deviation=max_deviation,
        worst=worst,
        witnesses=witnesses,
        skipped=skipped,
        notes=notes,
        details={"measure": measure.describe()},
    )


@dataclass(frozen=True)
class _Triple:
    scenario: Scenario
    first: Proposition
    second: Proposition
    context: EvidenceSet
    u1: float
    u2: float
    u12: float


def _evaluate_triple(measure, scenario, first, second, context) -> _Triple:
    dist, hypothesis = scenario.dist, scenario.hypothesis
    _require_mass(dist, hypothesis, context.union(first).union(second))
    return _Triple(
        scenario,
        first,
        second,
        context,
        measure(dist, hypothesis, first, context),
        measure(dist, hypothesis, second, context.union(first)),
        measure(dist, hypothesis, EvidenceSet.of(first, second), context),
    )


def _update_rows(measure: UpdateMeasure, scenario: Scenario) -> List[_Triple]:
    if scenario.dist.schema.n < 2:
        raise _Skip("fewer than two findings")
    return [
        _evaluate_triple(measure, scenario, first, second, context)
        for first, second, context in update_triples(scenario.dist.schema)
    ]


def _matches(a: _Triple, b: _Triple, match_tol: float) -> bool:
    return abs(a.u1 - b.u1) <= match_tol and abs(a.u2 - b.u2) <= match_tol


def _cell(row: _Triple, match_tol: float) -> Tuple[int, int]:
    return math.floor(row.u1 / match_tol), math.floor(row.u2 / match_tol)


def _grid_collisions(rows: List[_Triple], tol: float, match_tol: float):
    """Yields (earlier, later, gap) for rows whose component updates agree within match_tol."""
    cells = defaultdict(list)
    for row in rows:
        x, y = _cell(row, match_tol)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for other in cells.get((x + dx, y + dy), ()):
                    gap = abs(row.u12 - other.u12)
                    if gap > tol and _matches(row, other, match_tol):
                        yield other, row, gap
        cells[(x, y)].append(row)


def _match_sensitivity(evaluate: Callable[[float], float], target: float) -> Optional[float]:
    """
    Bisects a monotone function of a sensitivity onto ``target``. Step
    functions end on whichever bracket end lies closer.
    """
    lo, hi = _SENSITIVITY_RANGE
    f_lo, f_hi = evaluate(lo), evaluate(hi)
    if not min(f_lo, f_hi) <= target <= max(f_lo, f_hi):
        return None
    increasing = f_hi >= f_lo
    for _ in range(constants.BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        f_mid = evaluate(mid)
        if (f_mid < target) == increasing:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return lo if abs(f_lo - target) <= abs(f_hi - target) else hi


def _project(measure: UpdateMeasure, row: _Triple, partner: Scenario) -> Optional[_Triple]:
    """
    Refits ``partner``'s naive-Bayes model so that its component updates
    equal those of ``row``. The partner keeps its prior and false positive
    rates; only the sensitivities of the two findings of ``row`` move.
    """
    model = partner.model
    findings = list(model.findings)
    names = model.names
    hypothesis = partner.hypothesis
    context = row.context

    def refit(variable: str, sensitivity: float):
        index = names.index(variable)
        findings[index] = Finding(variable, sensitivity, findings[index].p_given_not_h)
        return joint_from_naive_bayes(model.with_findings(findings))

    def first_update(s):
        return measure(refit(row.first.variable, s), hypothesis, row.first, context)

    def second_update(s):
        return measure(
            refit(row.second.variable, s), hypothesis, row.second, context.union(row.first)
        )

    try:
        s1 = _match_sensitivity(first_update, row.u1)
        if s1 is None:
            return None
        refit(row.first.variable, s1)
        s2 = _match_sensitivity(second_update, row.u2)
        if s2 is None:
            return None
        refit(row.second.variable, s2)
        fitted = model.with_findings(findings)
        scenario = Scenario(
            f"{partner.id}~matched-{row.scenario.id}", joint_from_naive_bayes(fitted), fitted
        )
        return _evaluate_triple(measure, scenario, row.first, row.second, context)
    except _PROJECTION_ERRORS:
        return None


def _refined_collisions(measure, tested, tol, match_tol, refinements):
    """
    Pairs a bounded, evenly strided set of rows from naive-Bayes scenarios
    with a partner scenario half the family away, refitted to the same
    component updates.
    """
    nb_scenarios = [s for s, _ in tested if s.model is not None]
    if refinements <= 0 or not nb_scenarios:
        return [], 0, 0
    position = {s.id: i for i, s in enumerate(nb_scenarios)}
    rows = [row for s, triples in tested if s.model is not None for row in triples]
    if not rows:
        return [], 0, 0
    picks = sorted({k * len(rows) // refinements for k in range(refinements)})
    collisions = []
    refined = 0
    for pick in picks:
        row = rows[pick]
        partner = nb_scenarios[(position[row.scenario.id] + len(nb_scenarios) // 2) % len(nb_scenarios)]
        projected = _project(measure, row, partner)
        if projected is None or not _matches(row, projected, match_tol):
            continue
        refined += 1
        gap = abs(row.u12 - projected.u12)
        if gap > tol:
            collisions.append((row, projected, gap))
    return collisions, len(picks), refined


def _triple_witness(row: _Triple, gap: float, partner: Optional[Witness] = None) -> Witness:
    return Witness.build(
        row.scenario.id,
        row.scenario.dist,
        row.scenario.hypothesis,
        row.first,
        row.context,
        {"U(H,E1,e)": row.u1, "U(H,E2,E1e)": row.u2, "U(H,E1E2,e)": row.u12},
        gap,
        second=row.second,
        partner=partner,
    )


def _collision_witness(a: _Triple, b: _Triple, gap: float) -> Witness:
    return _triple_witness(a, gap, partner=_triple_witness(b, gap))


def check_update_property(
    measure: UpdateMeasure,
    family: ScenarioFamily,
    tol: float = constants.COLLISION_TOLERANCE,
    match_tol: float = constants.COLLISION_MATCH_TOLERANCE,
    refinements: int = constants.COLLISION_REFINEMENTS,
) -> AuditReport:
    """
    Searches for a collision: two scenarios whose component updates
    U(H,E1,e) and U(H,E2,E1e) agree within ``match_tol`` while their
    combined updates U(H,E1E2,e) differ by more than ``tol``. A collision
    refutes the existence of any combining function; finding none proves
    nothing.

    The search hashes every evaluated triple onto a grid of cell size
    ``match_tol``, then refits up to ``refinements`` naive-Bayes partners
    by bisection to hit exact component matches.

    Raises:
        EvidenceCapError: A generated family has fewer than two findings.
    """
    if family.kind != families.EXPLICIT and family.findings < 2:
        raise exceptions.EvidenceCapError(
            f"The update property needs at least two findings, got {family.findings}."
        )
    if not (0 < match_tol < tol):
        raise exceptions.ParameterRangeError(
            f"Need 0 < match_tol < tol, got match_tol={match_tol!r}, tol={tol!r}."
        )
    scenarios = generate_scenarios(family)
    tested, skipped = _scan(scenarios, lambda s: _update_rows(measure, s))
    rows = [row for _, triples in tested for row in triples]

    collisions = list(_grid_collisions(rows, tol, match_tol))
    grid_collisions = len(collisions)
    refined_collisions, attempted, refined = _refined_collisions(
        measure, tested, tol, match_tol, refinements
    )
    collisions.extend(refined_collisions)

    worst = None
    max_gap = 0.0
    if collisions:
        a, b, max_gap = max(collisions, key=lambda c: c[2])
        worst = _collision_witness(a, b, max_gap)
    witnesses = [_collision_witness(a, b, g) for a, b, g in collisions[: constants.MAX_WITNESSES]]

    counts = _base_counts(scenarios, tested, skipped)
    counts.update(
        triples=len(rows),
        refinements=attempted,
        refined=refined,
        grid_collisions=grid_collisions,
        refined_collisions=len(refined_collisions),
        collisions=len(collisions),
    )
    if collisions:
        notes = [
            f"Refuted: {len(collisions)} collision(s) agree on both component updates within "
            f"{match_tol:g} while the combined updates differ by more than {tol:g}, so no function "
            "of the component updates yields the combined update."
        ]
    else:
        notes = [
            "Not refuted: no collision was found. A search cannot prove that a combining function exists."
        ]
    logger.info(
        f"Update property of {measure.name} over {family.kind}: "
        f"{len(collisions)} collision(s) among {len(rows)} triples."
    )
    return AuditReport(
        measure=measure.name,
        axiom=UPDATE_PROPERTY,
        verdict=_verdict(bool(collisions)),
        tolerances={"tol": tol, "match_tol": match_tol},
        family=family.describe(),
        seed=family.seed,
        counts=counts,
        max_deviation=max_gap,
        worst=worst,
        witnesses=witnesses,
        skipped=skipped,
        notes=notes,
        details={"measure": measure.describe()},
    )


@dataclass(frozen=True)
class _MarginalRow:
    pairs: List[_Pair]
    context: Optional[EvidenceSet]
    prior: float
    given_context: float

    @property
    def posterior_deviation(self) -> float:
        return max((p.deviation for p in self.pairs), default=0.0)

    @property
    def marginal_deviation(self) -> float:
        return abs(self.given_context - self.prior)


def _marginal_row(scenario: Scenario) -> _MarginalRow:
    dist, hypothesis = scenario.dist, scenario.hypothesis
    pairs = _modularity_rows(PosteriorMeasure(), scenario)
    prior = conditional(dist, hypothesis)
    worst_context, worst_value = None, prior
    for context in conjunctions(dist.schema.evidence):
        _require_mass(dist, hypothesis, context)
        value = conditional(dist, hypothesis, context)
        if abs(value - prior) > abs(worst_value - prior):
            worst_context, worst_value = context, value
    return _MarginalRow(pairs, worst_context, prior, worst_value)


def check_marginal_independence_trap(
    family: Optional[ScenarioFamily] = None,
    tol: float = constants.MODULARITY_TOLERANCE,
) -> AuditReport:
    """
    Treats the posterior p(H|Ee) as a modular update and reports, per
    scenario, how far it is from modular and how far p(H|e) is from p(H).

    The verdict ``holds`` confirms the reductio: every scenario on which
    the posterior is modular has evidence marginally independent of H,
    i.e. evidence that cannot change belief. A scenario that is
    posterior-modular yet marginally dependent is reported as a violation.
    """
    family = families.ci_grid() if family is None else family
    scenarios = generate_scenarios(family)
    tested, skipped = _scan(scenarios, _marginal_row)

    per_scenario = []
    violations = []
    counts = dict.fromkeys(
        (
            "posterior_modular",
            "marginally_independent",
            "informative",
            "informative_violating",
            "uninformative",
            "uninformative_satisfying",
            "not_applicable",
        ),
        0,
    )
    max_deviation = 0.0
    worst_nonmodular = None
    for scenario, row in tested:
        if not row.pairs:
            # A single finding leaves no context to compare against.
            counts["not_applicable"] += 1
            per_scenario.append({"scenario": scenario.id, "applicable": False})
            continue
        modular = row.posterior_deviation <= tol
        independent = row.marginal_deviation <= tol
        if scenario.model is not None:
            informative = not scenario.model.is_uninformative()
        else:
            informative = not independent
        counts["posterior_modular"] += modular
        counts["marginally_independent"] += independent
        counts["informative"] += informative
        counts["informative_violating"] += informative and not modular
        counts["uninformative"] += not informative
        counts["uninformative_satisfying"] += (not informative) and modular
        per_scenario.append(
            {
                "scenario": scenario.id,
                "posterior_deviation": row.posterior_deviation,
                "marginal_deviation": row.marginal_deviation,
                "informative": informative,
                "applicable": True,
            }
        )
        if row.posterior_deviation > max_deviation:
            max_deviation = row.posterior_deviation
            worst_nonmodular = (scenario, max(row.pairs, key=lambda p: p.deviation))
        if modular and not independent:
            violations.append((scenario, row))

    def marginal_witness(scenario, row):
        # An empty context marks a p(H|e) against p(H) witness.
        return Witness.build(
            scenario.id,
            scenario.dist,
            scenario.hypothesis,
            row.context,
            None,
            {"p(H|e)": row.given_context, "p(H)": row.prior},
            row.marginal_deviation,
        )

    if violations:
        worst = marginal_witness(*max(violations, key=lambda v: v[1].marginal_deviation))
        witnesses = [marginal_witness(s, r) for s, r in violations[: constants.MAX_WITNESSES]]
    else:
        worst = None if worst_nonmodular is None else _modularity_witness(*worst_nonmodular)
        witnesses = []

    all_counts = _base_counts(scenarios, tested, skipped)
    all_counts.update(counts)
    applicable = len(tested) - counts["not_applicable"]
    notes = [
        f"p(H|Ee) is modular on {counts['posterior_modular']} of {applicable} scenarios "
        "with a context to compare; "
        f"{counts['marginally_independent']} have p(H|e) = p(H) within {tol:g} for every e.",
        f"{counts['informative_violating']} of {counts['informative']} informative scenarios "
        "violate posterior modularity.",
        f"{counts['uninformative_satisfying']} of {counts['uninformative']} uninformative scenarios "
        "satisfy it, degenerately: their evidence cannot move belief.",
    ]
    if counts["not_applicable"]:
        notes.append(
            f"{counts['not_applicable']} scenario(s) have a single finding and no (E, e) pair; "
            "they do not enter the verdict."
        )
    if violations:
        notes.append(
            f"{len(violations)} scenario(s) are posterior-modular without marginal independence."
        )
    else:
        notes.append(
            "Posterior modularity occurs only where evidence and hypothesis are marginally "
            "independent, so a posterior cannot serve as a modular update."
        )
    logger.info(f"Marginal independence check over {family.kind}: {_verdict(bool(violations))}.")
    return AuditReport(
        measure=PosteriorMeasure.name,
        axiom=MARGINAL_INDEPENDENCE,
        verdict=_verdict(bool(violations)),
        tolerances={"tol": tol},
        family=family.describe(),
        seed=family.seed,
        counts=all_counts,
        max_deviation=max_deviation,
        worst=worst,
        witnesses=witnesses,
        skipped=skipped,
        notes=notes,
        details={"measure": PosteriorMeasure().describe(), "scenarios": per_scenario},
    )


def _cf_limit_rows(scenario: Scenario):
    dist, hypothesis = scenario.dist, scenario.hypothesis
    prior = conditional(dist, hypothesis)
    rows = []
    for literal in single_literals(dist.schema.evidence):
        _require_mass(dist, hypothesis, literal)
        posterior = conditional(dist, hypothesis, literal)
        rows.append((literal, prior, posterior, certainty_factor(dist, hypothesis, literal)))
    return prior, rows


def check_cf_limit_case(
    family: Optional[ScenarioFamily] = None,
    epsilon: float = constants.CF_LIMIT_EPSILON,
) -> AuditReport:
    """
    Measures how well CF(H,E) approximates p(H|E) for rare hypotheses.

    Scenarios with p(H) >= ``epsilon`` are excluded. For confirming
    evidence the error |CF - p(H|E)| must not exceed
    p(H)(1 - p(H|E))/(1 - p(H)); for non-confirming evidence CF <= 0 and
    the error is at least p(H|E), which is tracked separately.
    """
    if family is None:
        family = families.ci_grid(findings=1, priors=constants.CF_LIMIT_PRIORS)
    if not 0.0 < epsilon <= 1.0:
        raise exceptions.ParameterRangeError(f"epsilon must lie in (0, 1], got {epsilon!r}.")
    scenarios = generate_scenarios(family)
    eligible = [s for s in scenarios if conditional(s.dist, s.hypothesis) < epsilon]
    tested, skipped = _scan(eligible, _cf_limit_rows)

    confirming = []
    non_confirming = []
    exceeded = []
    for scenario, (prior, rows) in tested:
        for literal, p, q, cf in rows:
            error = abs(cf - q)
            if q - p > constants.ZERO_MASS:
                bound = p * (1.0 - q) / (1.0 - p)
                entry = (scenario, literal, p, q, cf, error, bound)
                confirming.append(entry)
                if error > bound + constants.ZERO_MASS:
                    exceeded.append(entry)
            else:
                non_confirming.append((scenario, literal, p, q, cf, error, None))

    def witness(entry):
        scenario, literal, p, q, cf, error, bound = entry
        observed = {"p(H)": p, "p(H|E)": q, "CF(H,E)": cf}
        if bound is not None:
            observed["bound"] = bound
        return Witness.build(scenario.id, scenario.dist, scenario.hypothesis, literal, None, observed, error)

    max_deviation = max((e[5] for e in confirming), default=0.0)
    if exceeded:
        worst = witness(max(exceeded, key=lambda e: e[5] - e[6]))
    elif confirming:
        worst = witness(max(confirming, key=lambda e: e[5]))
    else:
        worst = None

    non_confirming_worst = max(non_confirming, key=lambda e: e[5], default=None)
    details = {
        "measure": CertaintyFactorMeasure().describe(),
        "epsilon": epsilon,
        "non_confirming": {
            "count": len(non_confirming),
            "max_deviation": None if non_confirming_worst is None else non_confirming_worst[5],
            "worst": None if non_confirming_worst is None else witness(non_confirming_worst).to_dict(),
        },
    }
    counts = _base_counts(scenarios, tested, skipped)
    counts.update(
        excluded=len(scenarios) - len(eligible),
        confirming=len(confirming),
        non_confirming=len(non_confirming),
        bound_exceeded=len(exceeded),
    )
    notes = [
        "For confirming evidence CF(H,E) = (p(H|E) - p(H))/(1 - p(H)), so "
        "p(H|E) - CF(H,E) = p(H)(1 - p(H|E))/(1 - p(H)), which vanishes as p(H) -> 0.",
        "For non-confirming evidence CF(H,E) = (p(H|E) - p(H))/p(H) <= 0, so the error is "
        "at least p(H|E); with p(H|E) = p(H) it equals p(H|E) exactly.",
    ]
    if not confirming:
        notes.append(f"No confirming evidence among scenarios with p(H) < {epsilon:g}.")
    logger.info(
        f"CF limit check over {family.kind}: max |CF - p(H|E)| {max_deviation:.3g} "
        f"on {len(confirming)} confirming literals."
    )
    return AuditReport(
        measure=CertaintyFactorMeasure.name,
        axiom=CF_LIMIT,
        verdict=_verdict(bool(exceeded)),
        tolerances={"epsilon": epsilon},
        family=family.describe(),
        seed=family.seed,
        counts=counts,
        max_deviation=max_deviation,
        worst=worst,
        witnesses=[witness(e) for e in exceeded[: constants.MAX_WITNESSES]],
        skipped=skipped,
        notes=notes,
        details=details,
    )


def reproduce_mycin_counterexample() -> AuditReport:
    """
    Builds p(H) = .01 with two conditionally independent findings of
    likelihood ratio 99 and shows that CF(H,E2,e) depends on e.
    """
    model = families.mycin_counterexample_model()
    dist = joint_from_naive_bayes(model)
    hypothesis = dist.hypothesis
    e1, e2 = Proposition("E1"), Proposition("E2")
    both = EvidenceSet.of(e1, e2)

    prior = conditional(dist, hypothesis)
    ratio1 = likelihood_ratio(dist, hypothesis, e1)
    ratio2 = likelihood_ratio(dist, hypothesis, e2)
    p1 = conditional(dist, hypothesis, e1)
    p12 = conditional(dist, hypothesis, both)
    cf1 = certainty_factor_conditional(dist, hypothesis, e1)
    cf12 = certainty_factor_conditional(dist, hypothesis, both)
    cf2_after = certainty_factor_conditional(dist, hypothesis, e2, e1)
    cf2 = certainty_factor_conditional(dist, hypothesis, e2)
    gap = abs(cf2_after - cf2)
    combined = mycin_combine(cf1, cf2)

    quantities = {
        "p(H)": prior,
        "lambda(H,E1)": ratio1,
        "lambda(H,E2)": ratio2,
        "p(H|E1)": p1,
        "p(H|E1E2)": p12,
        "CF(H,E1,{})": cf1,
        "CF(H,E1E2,{})": cf12,
        "CF(H,E2,E1)": cf2_after,
        "CF(H,E2,{})": cf2,
        "modularity gap": gap,
        "mycin_combine(CF(H,E1,{}),CF(H,E2,{}))": combined,
    }
    notes = [
        f"p(H|E1) = p(H) lambda / (p(H) lambda + 1 - p(H)) = {prior:g}*{ratio1:g} / "
        f"({prior:g}*{ratio1:g} + {1 - prior:g}) = {p1:.5f}",
        f"p(H|E1E2) = p(H) lambda^2 / (p(H) lambda^2 + 1 - p(H)) = {p12:.5f}, "
        "by conditional independence of E1 and E2",
        f"CF(H,E1,{{}}) = (p(H|E1) - p(H)) / (1 - p(H)) = ({p1:.5f} - {prior:g}) / {1 - prior:g} = {cf1:.5f}",
        f"CF(H,E1E2,{{}}) = (p(H|E1E2) - p(H)) / (1 - p(H)) = {cf12:.5f}",
        f"CF(H,E2,E1) = (p(H|E1E2) - p(H|E1)) / (1 - p(H|E1)) = ({p12:.5f} - {p1:.5f}) / "
        f"{1 - p1:.5f} = {cf2_after:.5f}",
        f"CF(H,E2,{{}}) = {cf2:.5f} by symmetry, so the update for E2 depends on the prior "
        f"evidence E1: gap {cf2_after:.5f} - {cf2:.5f} = {gap:.5f}",
        f"Combining CF(H,E1,{{}}) and CF(H,E2,{{}}) gives {combined:.5f}, not the "
        f"enumerated CF(H,E1E2,{{}}) = {cf12:.5f}.",
        "The per-finding likelihood ratio printed as '.99' must read 99: a ratio of .99 "
        "would lower belief in H.",
        f"The value printed as 'approximately 5' for CF(H,E1,{{}}) must read approximately .5 ({cf1:.5f}).",
    ]
    witness = Witness.build(
        "mycin-counterexample",
        dist,
        hypothesis,
        e2,
        e1,
        {"U(H,E,e)": cf2_after, "U(H,E)": cf2},
        gap,
    )
    violated = gap > constants.MODULARITY_TOLERANCE
    return AuditReport(
        measure=CertaintyFactorMeasure.name,
        axiom=MODULARITY,
        verdict=_verdict(violated),
        tolerances={"tol": constants.MODULARITY_TOLERANCE},
        family={"kind": families.EXPLICIT, "models": 1, "model": "mycin-counterexample"},
        seed=None,
        counts={"scenarios": 1, "tested": 1, "skipped": 0, "comparisons": 1, "violations": int(violated)},
        max_deviation=gap,
        worst=witness if violated else None,
        witnesses=[witness] if violated else [],
        quantities=quantities,
        notes=notes,
        details={"measure": CertaintyFactorMeasure().describe()},
    )


def _masking_rows(measure: EvokingStrengthMeasure, scenario: Scenario):
    dist, hypothesis = scenario.dist, scenario.hypothesis
    thresholds = measure.thresholds
    masked = []
    for evidence, context in modularity_pairs(dist.schema):
        with_context = conditional(dist, hypothesis, evidence.union(context))
        without_context = conditional(dist, hypothesis, evidence)
        strength = thresholds.strength(with_context)
        if (
            abs(with_context - without_context) > constants.MODULARITY_TOLERANCE
            and strength == thresholds.strength(without_context)
        ):
            masked.append(
                {
                    "scenario": scenario.id,
                    "evidence": str(evidence),
                    "context": str(context),
                    "p(H|Ee)": with_context,
                    "p(H|E)": without_context,
                    "strength": strength,
                }
            )
    return masked


def audit_evoking_strengths(
    family: ScenarioFamily,
    thresholds: Optional[EvokingThresholds] = None,
    tol: float = 0.0,
) -> AuditReport:
    """
    Modularity audit of evoking strengths, plus the cases where bucketing
    masks a change of posterior: p(H|Ee) differs from p(H|E) while both
    fall into the same bucket.
    """
    measure = EvokingStrengthMeasure(DEFAULT_THRESHOLDS if thresholds is None else thresholds)
    report = check_modularity(measure, family, tol)
    skipped = {s["scenario"] for s in report.skipped}
    masked = []
    for scenario in generate_scenarios(family):
        if scenario.id not in skipped:
            masked.extend(_masking_rows(measure, scenario))
    report.counts["masked"] = len(masked)
    report.details["masked"] = masked[: constants.MAX_WITNESSES]
    if masked:
        report.notes.append(
            f"Bucketing masks {len(masked)} change(s) of posterior: p(H|Ee) and p(H|E) differ "
            "but fall into the same bucket."
        )
    report.notes.append(
        f"Cut points {list(measure.thresholds.cuts)} give {measure.thresholds.buckets} strengths."
    )
    return report


def measure_from_report(report: AuditReport) -> UpdateMeasure:
    """Rebuilds the audited measure, with its options, from a report."""
    description = report.details.get("measure", {})
    return create_measure(
        report.measure,
        log_base=description.get("log_base"),
        thresholds=description.get("thresholds"),
    )


def _combined_update(measure: UpdateMeasure, witness: Witness) -> float:
    dist = witness.distribution()
    return measure(
        dist,
        witness.hypothesis_literal(),
        witness.evidence_set().union(witness.second_literal()),
        witness.context_set(),
    )


def replay_witness(
    report: AuditReport, witness: Witness, measure: Optional[UpdateMeasure] = None
) -> float:
    """
    Recomputes a witness's magnitude from its stored table and literals
    alone, under the axiom of ``report``.
    """
    measure = measure_from_report(report) if measure is None else measure
    dist = witness.distribution()
    hypothesis = witness.hypothesis_literal()
    evidence = witness.evidence_set()
    context = witness.context_set()

    if report.axiom == UPDATE_PROPERTY:
        if witness.partner is None:
            raise exceptions.ModelFileError("Collision witness lacks its partner scenario.")
        return abs(_combined_update(measure, witness) - _combined_update(measure, witness.partner))
    if report.axiom == CF_LIMIT:
        return abs(certainty_factor(dist, hypothesis, evidence) - conditional(dist, hypothesis, evidence))
    if report.axiom == MARGINAL_INDEPENDENCE and not context:
        return abs(conditional(dist, hypothesis, evidence) - conditional(dist, hypothesis))
    return abs(measure(dist, hypothesis, evidence, context) - measure(dist, hypothesis, evidence))
