import math
import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from evicalc import exceptions
from evicalc.probability.joint import (
    EvidenceSet,
    Proposition,
    Schema,
    conditional,
    describe,
    is_conditionally_independent,
    joint_from_table,
    likelihood_ratio,
    literal_assignments,
    odds,
    probability,
)
from evicalc.probability.naivebayes import (
    Finding,
    NaiveBayesModel,
    joint_from_naive_bayes,
)

H = Proposition("H")
E1, E2 = Proposition("E1"), Proposition("E2")
TWO = Schema("H", ("E1", "E2"))


def normalized_tables(n):
    size = 2 ** (n + 1)
    return st.lists(
        st.floats(min_value=1e-3, max_value=1.0), min_size=size, max_size=size
    ).map(lambda xs: [x / math.fsum(xs) for x in xs])


class TestProposition(unittest.TestCase):
    def test_parse_negations(self):
        self.assertEqual(Proposition.parse("~E1"), Proposition("E1", False))
        self.assertEqual(Proposition.parse("¬E1"), Proposition("E1", False))
        self.assertEqual(Proposition.parse("!E1"), Proposition("E1", False))
        self.assertEqual(Proposition.parse("~~E1"), Proposition("E1", True))

    def test_str_uses_tilde(self):
        self.assertEqual(str(~E1), "~E1")
        self.assertEqual(str(E1), "E1")

    def test_invalid_name(self):
        with self.assertRaises(exceptions.UnknownVariableError):
            Proposition("1E")


class TestEvidenceSet(unittest.TestCase):
    def test_both_polarities_rejected(self):
        with self.assertRaises(exceptions.InconsistentEvidenceError):
            EvidenceSet.of("E1", "~E1")

    def test_parse_empty(self):
        for text in ("", "{}", "∅"):
            self.assertFalse(EvidenceSet.parse(text))

    def test_str_is_sorted(self):
        self.assertEqual(str(EvidenceSet.parse("E2,~E1")), "~E1,E2")
        self.assertEqual(str(EvidenceSet()), "{}")

    def test_union(self):
        self.assertEqual(EvidenceSet.of(E1) | E2, EvidenceSet.of(E1, E2))


class TestSchema(unittest.TestCase):
    def test_duplicate_names(self):
        with self.assertRaises(exceptions.UnknownVariableError):
            Schema("H", ("E1", "E1"))

    def test_unknown_axis(self):
        with self.assertRaises(exceptions.UnknownVariableError):
            TWO.axis("E3")

    def test_assignments_in_canonical_order(self):
        first = next(iter(Schema("H", ("E1",)).assignments()))
        self.assertEqual(first, (H, E1))
        self.assertEqual(len(list(TWO.assignments())), 8)


class TestJointFromTable(unittest.TestCase):
    def test_naive_bayes_table(self):
        model = NaiveBayesModel(0.5, (Finding("E1", 0.8, 0.2),))
        dist = joint_from_naive_bayes(model)
        np.testing.assert_allclose(dist.entries(), (0.4, 0.1, 0.1, 0.4), atol=1e-15)

    def test_mapping_table(self):
        dist = joint_from_table(
            Schema("H", ("E1",)), {"H,E1": 0.4, "H,~E1": 0.1, "~H,E1": 0.1, "~H,~E1": 0.4}
        )
        self.assertEqual(dist.entries(), (0.4, 0.1, 0.1, 0.4))

    def test_arity(self):
        with self.assertRaises(exceptions.TableArityError) as ctx:
            joint_from_table(TWO, [0.5, 0.5])
        self.assertEqual(ctx.exception.expected, 8)

    def test_incomplete_mapping(self):
        with self.assertRaises(exceptions.TableArityError):
            joint_from_table(Schema("H", ("E1",)), {"H,E1": 0.5, "~H,E1": 0.5})

    def test_negative(self):
        with self.assertRaises(exceptions.NegativeProbabilityError):
            joint_from_table(Schema("H"), [1.5, -0.5])

    def test_not_finite(self):
        with self.assertRaises(exceptions.NegativeProbabilityError):
            joint_from_table(Schema("H"), [float("nan"), 1.0])

    def test_zero_mass(self):
        with self.assertRaises(exceptions.ZeroMassError):
            joint_from_table(Schema("H"), [0.0, 0.0])

    def test_not_normalized(self):
        with self.assertRaises(exceptions.NotNormalizedError):
            joint_from_table(Schema("H"), [0.5, 0.6])

    def test_small_slack_is_renormalized(self):
        dist = joint_from_table(Schema("H"), [0.5, 0.5 - 1e-10])
        self.assertAlmostEqual(math.fsum(dist.entries()), 1.0, places=15)

    def test_evidence_cap(self):
        schema = Schema("H", tuple(f"E{i}" for i in range(3)))
        with self.assertRaises(exceptions.EvidenceCapError):
            joint_from_table(schema, [1 / 16] * 16, max_evidence=2)

    def test_table_is_read_only(self):
        dist = joint_from_table(Schema("H"), [0.5, 0.5])
        with self.assertRaises(ValueError):
            dist.table[0] = 1.0

    def test_describe(self):
        dist = joint_from_table(Schema("H", ("E1",)), [0.4, 0.1, 0.1, 0.4])
        self.assertEqual(
            describe(dist), {"hypothesis": "H", "evidence": ["E1"], "table": [0.4, 0.1, 0.1, 0.4]}
        )


class TestQueries(unittest.TestCase):
    def setUp(self):
        self.dist = joint_from_naive_bayes(
            NaiveBayesModel(0.01, (Finding("E1", 0.99, 0.01), Finding("E2", 0.99, 0.01)))
        )

    def test_counterexample_posteriors(self):
        self.assertAlmostEqual(conditional(self.dist, H, E1), 0.5, delta=1e-9)
        self.assertAlmostEqual(conditional(self.dist, H, EvidenceSet.of(E1, E2)), 0.99, delta=1e-9)
        self.assertAlmostEqual(likelihood_ratio(self.dist, H, E1), 99.0, delta=1e-9)

    def test_negated_hypothesis_inverts_ratio(self):
        self.assertAlmostEqual(
            likelihood_ratio(self.dist, ~H, E1), 1 / likelihood_ratio(self.dist, H, E1), delta=1e-12
        )

    def test_empty_given_is_marginal(self):
        self.assertAlmostEqual(conditional(self.dist, H), probability(self.dist, H), delta=0)
        self.assertEqual(probability(self.dist), 1.0)

    def test_inconsistent_target_is_zero(self):
        self.assertEqual(conditional(self.dist, ~E1, E1), 0.0)

    def test_conditioning_on_zero_mass(self):
        dist = joint_from_table(Schema("H", ("E1",)), [0.5, 0.0, 0.5, 0.0])
        with self.assertRaises(exceptions.ConditioningOnZeroMassError):
            conditional(dist, H, ~E1)

    def test_odds(self):
        self.assertAlmostEqual(odds(self.dist, H, E1), 1.0, delta=1e-9)
        dist = joint_from_table(Schema("H", ("E1",)), [0.5, 0.0, 0.0, 0.5])
        with self.assertRaises(exceptions.DegenerateBeliefError):
            odds(dist, H, E1)

    def test_undefined_ratio(self):
        impossible_under_not_h = joint_from_table(Schema("H", ("E1",)), [0.25, 0.25, 0.0, 0.5])
        with self.assertRaises(exceptions.UndefinedRatioError):
            likelihood_ratio(impossible_under_not_h, H, E1)
        impossible_under_h = joint_from_table(Schema("H", ("E1",)), [0.0, 0.5, 0.25, 0.25])
        with self.assertRaises(exceptions.UndefinedRatioError):
            likelihood_ratio(impossible_under_h, H, E1)

    def test_literal_assignments(self):
        self.assertEqual(
            [str(a) for a in literal_assignments(["E1", "E2"])],
            ["E1,E2", "E1,~E2", "~E1,E2", "~E1,~E2"],
        )


class TestConditionalIndependence(unittest.TestCase):
    def test_naive_bayes_is_independent(self):
        model = NaiveBayesModel.from_ratios(0.3, (3.0, 1 / 3, 99.0))
        self.assertTrue(is_conditionally_independent(joint_from_naive_bayes(model)))

    def test_correlated_findings(self):
        dist = joint_from_table(TWO, [0.2, 0.0, 0.0, 0.3, 0.1, 0.1, 0.1, 0.2])
        self.assertFalse(is_conditionally_independent(dist))


class TestIdentities(unittest.TestCase):
    @settings(max_examples=200, deadline=None)
    @given(normalized_tables(2))
    def test_bayes_identity(self, table):
        dist = joint_from_table(TWO, table)
        lhs = conditional(dist, H, E1)
        rhs = conditional(dist, E1, H) * probability(dist, H) / probability(dist, E1)
        self.assertAlmostEqual(lhs, rhs, delta=1e-12)

    @settings(max_examples=200, deadline=None)
    @given(normalized_tables(2))
    def test_odds_form(self, table):
        dist = joint_from_table(TWO, table)
        posterior_odds = odds(dist, H, EvidenceSet.of(E1, E2))
        product = odds(dist, H, E1) * likelihood_ratio(dist, H, E2, E1)
        self.assertLessEqual(abs(posterior_odds - product), 1e-9 * max(1.0, posterior_odds))

    def test_chain_rule_over_random_tables(self):
        rng = np.random.default_rng(2024)
        checked = 0
        for _ in range(10000):
            dist = joint_from_table(TWO, rng.dirichlet(np.ones(8)))
            try:
                combined = likelihood_ratio(dist, H, EvidenceSet.of(E1, E2))
                chained = likelihood_ratio(dist, H, E2, E1) * likelihood_ratio(dist, H, E1)
            except (exceptions.UndefinedRatioError, exceptions.ConditioningOnZeroMassError):
                continue
            checked += 1
            self.assertLessEqual(
                abs(combined - chained), 1e-9 * max(1.0, abs(combined), abs(chained))
            )
        self.assertGreater(checked, 9900)


if __name__ == "__main__":
    unittest.main()
