"""Exact joint distributions over one hypothesis and n binary findings.

Tables are numpy arrays of shape ``(2,) * (n + 1)``. Axis 0 is the
hypothesis, axis i is the i-th evidence variable, and index 0 means the
variable holds (positive literal) while index 1 means it is negated. The
flat canonical order of a table is therefore HE..., H~E..., ~HE..., ~H~E...
"""

import itertools
import math
import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Mapping, Sequence, Tuple, Union

import numpy as np

from evicalc import constants
from evicalc import exceptions

NEGATION_PREFIXES = ("~", "¬", "!")
_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_.\-]*$")


@dataclass(frozen=True, order=True)
class Proposition:
    variable: str
    positive: bool = True

    def __post_init__(self):
        if not _NAME_RE.match(self.variable):
            raise exceptions.UnknownVariableError(
                f"'{self.variable}' is not a valid variable name."
            )

    def negate(self) -> "Proposition":
        return Proposition(self.variable, not self.positive)

    def __invert__(self) -> "Proposition":
        return self.negate()

    def __str__(self) -> str:
        return self.variable if self.positive else f"~{self.variable}"

    @classmethod
    def parse(cls, text: str) -> "Proposition":
        text = text.strip()
        positive = True
        while text and text[0] in NEGATION_PREFIXES:
            positive = not positive
            text = text[1:].strip()
        return cls(text, positive)


LiteralsLike = Union["EvidenceSet", Proposition, Iterable[Proposition], None]


@dataclass(frozen=True)
class EvidenceSet:
    """A conjunction of literals. The empty set is the empty conjunction."""

    literals: FrozenSet[Proposition] = field(default_factory=frozenset)

    def __post_init__(self):
        literals = frozenset(self.literals)
        object.__setattr__(self, "literals", literals)
        variables = [lit.variable for lit in literals]
        if len(variables) != len(set(variables)):
            duplicated = sorted({v for v in variables if variables.count(v) > 1})
            raise exceptions.InconsistentEvidenceError(
                f"Variable(s) {', '.join(duplicated)} appear in both polarities."
            )

    @classmethod
    def of(cls, *literals: Union[Proposition, str]) -> "EvidenceSet":
        return cls(
            frozenset(
                Proposition.parse(lit) if isinstance(lit, str) else lit
                for lit in literals
            )
        )

    @classmethod
    def parse(cls, text: str) -> "EvidenceSet":
        """Parses ``"E1,~E2"``; an empty string or ``"{}"`` is the empty set."""
        text = text.strip()
        if text in ("", "{}", "∅"):
            return cls()
        return cls.of(*[part for part in text.split(",") if part.strip()])

    @classmethod
    def coerce(cls, literals: LiteralsLike) -> "EvidenceSet":
        if literals is None:
            return cls()
        if isinstance(literals, EvidenceSet):
            return literals
        if isinstance(literals, Proposition):
            return cls(frozenset([literals]))
        return cls.of(*literals)

    def union(self, other: LiteralsLike) -> "EvidenceSet":
        return EvidenceSet(self.literals | EvidenceSet.coerce(other).literals)

    def __or__(self, other: LiteralsLike) -> "EvidenceSet":
        return self.union(other)

    def __iter__(self):
        return iter(sorted(self.literals))

    def __len__(self) -> int:
        return len(self.literals)

    def __bool__(self) -> bool:
        return bool(self.literals)

    @property
    def variables(self) -> FrozenSet[str]:
        return frozenset(lit.variable for lit in self.literals)

    def __str__(self) -> str:
        if not self.literals:
            return "{}"
        return ",".join(str(lit) for lit in self)


@dataclass(frozen=True)
class Schema:
    hypothesis: str
    evidence: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "evidence", tuple(self.evidence))
        names = (self.hypothesis,) + self.evidence
        for name in names:
            Proposition(name)
        if len(names) != len(set(names)):
            raise exceptions.UnknownVariableError(
                f"Variable names must be unique, got {list(names)}."
            )

    @property
    def n(self) -> int:
        return len(self.evidence)

    @property
    def variables(self) -> Tuple[str, ...]:
        return (self.hypothesis,) + self.evidence

    def axis(self, variable: str) -> int:
        try:
            return self.variables.index(variable)
        except ValueError:
            raise exceptions.UnknownVariableError(
                f"Unknown variable '{variable}'; schema has {list(self.variables)}."
            ) from None

    def hypothesis_literal(self, positive: bool = True) -> Proposition:
        return Proposition(self.hypothesis, positive)

    def assignments(self):
        """Yields every complete assignment in canonical table order."""
        for values in itertools.product((True, False), repeat=self.n + 1):
            yield tuple(
                Proposition(name, value) for name, value in zip(self.variables, values)
            )


class JointDistribution:
    """Immutable probability table; construct it with ``joint_from_table``."""

    __slots__ = ("_schema", "_table")

    def __init__(self, schema: Schema, table: np.ndarray):
        table = np.array(table, dtype=float).reshape((2,) * (schema.n + 1))
        table.flags.writeable = False
        self._schema = schema
        self._table = table

    @property
    def schema(self) -> Schema:
        return self._schema

    @property
    def table(self) -> np.ndarray:
        return self._table

    @property
    def hypothesis(self) -> Proposition:
        return self._schema.hypothesis_literal()

    @property
    def evidence(self) -> Tuple[str, ...]:
        return self._schema.evidence

    def entries(self) -> Tuple[float, ...]:
        """Flat table in canonical order."""
        return tuple(float(x) for x in self._table.reshape(-1))

    def mass(self, literals: LiteralsLike) -> float:
        index = [slice(None)] * (self._schema.n + 1)
        for lit in EvidenceSet.coerce(literals):
            index[self._schema.axis(lit.variable)] = 0 if lit.positive else 1
        return float(self._table[tuple(index)].sum())

    def __eq__(self, other):
        if not isinstance(other, JointDistribution):
            return NotImplemented
        return self._schema == other._schema and np.array_equal(
            self._table, other._table
        )

    def __hash__(self):
        return hash((self._schema, self._table.tobytes()))

    def __repr__(self):
        return f"JointDistribution(schema={self._schema!r}, entries={self.entries()!r})"


def _table_values(schema: Schema, entries) -> np.ndarray:
    size = 2 ** (schema.n + 1)
    if isinstance(entries, Mapping):
        values = np.zeros(size, dtype=float)
        seen = set()
        positions = {
            frozenset(assignment): i for i, assignment in enumerate(schema.assignments())
        }
        for key, value in entries.items():
            literals = EvidenceSet.parse(key) if isinstance(key, str) else EvidenceSet.coerce(key)
            position = positions.get(literals.literals)
            if position is None:
                raise exceptions.TableArityError(size, f"an incomplete assignment '{key}'")
            seen.add(position)
            values[position] = float(value)
        if len(seen) != size:
            raise exceptions.TableArityError(size, len(seen))
        return values
    values = np.asarray(list(entries), dtype=float).reshape(-1)
    if values.size != size:
        raise exceptions.TableArityError(size, values.size)
    return values


def joint_from_table(
    schema: Schema,
    entries: Union[Sequence[float], Mapping[str, float], np.ndarray],
    max_evidence: int = constants.MAX_EVIDENCE_VARIABLES,
) -> JointDistribution:
    """
    Builds a joint distribution from explicit table entries.

    Args:
        schema (Schema): Hypothesis and evidence variable names.
        entries: Either 2^(n+1) probabilities in canonical order or a mapping
            from complete assignments (e.g. ``"H,E1,~E2"``) to probabilities.
        max_evidence (int): Evidence-variable cap.

    Returns:
        (JointDistribution): The table, renormalized to sum to exactly 1.

    Raises:
        TableArityError: Wrong number of entries.
        NegativeProbabilityError: Some entry is negative.
        ZeroMassError: Entries sum to zero.
        NotNormalizedError: Entries sum further than 1e-9 from 1.
    """
    if schema.n > max_evidence:
        raise exceptions.EvidenceCapError(
            f"{schema.n} evidence variables exceed the cap of {max_evidence}."
        )
    values = _table_values(schema, entries)
    if not np.all(np.isfinite(values)):
        raise exceptions.NegativeProbabilityError("Table entries must be finite.")
    if np.any(values < 0):
        raise exceptions.NegativeProbabilityError(
            f"Table entries must be nonnegative, found {values.min()}."
        )
    total = math.fsum(values)
    if total == 0:
        raise exceptions.ZeroMassError("Table entries sum to zero.")
    # Slack of a few ulps so sums written as 1 - 1e-9 are accepted.
    if abs(total - 1.0) > constants.TABLE_SUM_TOLERANCE + 4 * np.finfo(float).eps:
        raise exceptions.NotNormalizedError(
            f"Table entries sum to {total!r}, expected 1 within "
            f"{constants.TABLE_SUM_TOLERANCE}."
        )
    return JointDistribution(schema, values / total)


def probability(dist: JointDistribution, literals: LiteralsLike = None) -> float:
    """Marginal probability of a conjunction of literals (1 for the empty set)."""
    return dist.mass(literals)


def conditional(
    dist: JointDistribution, target: LiteralsLike, given: LiteralsLike = None
) -> float:
    """
    p(target | given) by enumeration.

    Raises:
        ConditioningOnZeroMassError: p(given) is zero.
    """
    target = EvidenceSet.coerce(target)
    given = EvidenceSet.coerce(given)
    denominator = dist.mass(given)
    if denominator <= 0:
        raise exceptions.ConditioningOnZeroMassError(
            f"Cannot condition on {given}: it has probability zero."
        )
    try:
        joint = given.union(target)
    except exceptions.InconsistentEvidenceError:
        return 0.0
    return dist.mass(joint) / denominator


def odds(dist: JointDistribution, hypothesis: Proposition, given: LiteralsLike = None) -> float:
    p = conditional(dist, hypothesis, given)
    if p <= 0 or p >= 1:
        raise exceptions.DegenerateBeliefError(
            f"Odds of {hypothesis} given {EvidenceSet.coerce(given)} are undefined at p = {p}."
        )
    return p / (1 - p)


def likelihood_ratio(
    dist: JointDistribution,
    hypothesis: Proposition,
    evidence: LiteralsLike,
    prior_evidence: LiteralsLike = None,
) -> float:
    """
    lambda(H, E, e) = p(E | H e) / p(E | ~H e).

    Raises:
        ConditioningOnZeroMassError: H e or ~H e has probability zero.
        UndefinedRatioError: p(E | ~H e) is zero, or p(E | H e) is zero.
    """
    evidence = EvidenceSet.coerce(evidence)
    prior_evidence = EvidenceSet.coerce(prior_evidence)
    numerator = conditional(dist, evidence, prior_evidence.union(hypothesis))
    denominator = conditional(dist, evidence, prior_evidence.union(hypothesis.negate()))
    if denominator == 0:
        raise exceptions.UndefinedRatioError(
            f"p({evidence} | {hypothesis.negate()}, {prior_evidence}) is zero."
        )
    if numerator == 0:
        raise exceptions.UndefinedRatioError(
            f"p({evidence} | {hypothesis}, {prior_evidence}) is zero."
        )
    return numerator / denominator


def is_conditionally_independent(
    dist: JointDistribution,
    hypothesis: Union[Proposition, None] = None,
    tol: float = constants.CI_TOLERANCE,
) -> bool:
    """
    True iff the evidence variables are mutually independent given H and
    given ~H. A branch of zero mass is vacuously independent.

    Factorization of the full conditional table implies factorization of
    every evidence subset, so one comparison per branch suffices.
    """
    hypothesis = dist.hypothesis if hypothesis is None else hypothesis
    axis = dist.schema.axis(hypothesis.variable)
    n = dist.schema.n
    for value in (0, 1):
        branch = np.take(dist.table, value, axis=axis)
        mass = branch.sum()
        if mass <= 0:
            continue
        branch = branch / mass
        product = np.ones(())
        for i in range(n):
            others = tuple(j for j in range(n) if j != i)
            marginal = branch.sum(axis=others) if others else branch
            product = np.multiply.outer(product, marginal)
        if np.max(np.abs(branch - product)) > tol:
            return False
    return True


def literal_assignments(variables: Sequence[str]):
    """Yields every conjunction assigning a value to all of ``variables``."""
    for values in itertools.product((True, False), repeat=len(variables)):
        yield EvidenceSet(
            frozenset(Proposition(name, value) for name, value in zip(variables, values))
        )


def describe(dist: JointDistribution) -> Dict[str, object]:
    return {
        "hypothesis": dist.schema.hypothesis,
        "evidence": list(dist.schema.evidence),
        "table": list(dist.entries()),
    }
