import unittest

from evicalc import exceptions
from evicalc.audit import scenarios
from evicalc.audit.scenarios import (
    ScenarioFamily,
    ci_grid,
    ci_random,
    conjunctions,
    create_family,
    explicit,
    general_random,
    generate_scenarios,
    modularity_pairs,
    mycin_counterexample_model,
    single_literals,
    update_triples,
)
from evicalc.probability.joint import EvidenceSet, Proposition, Schema, is_conditionally_independent
from evicalc.probability.naivebayes import NaiveBayesModel


class TestFamilies(unittest.TestCase):
    def test_ci_grid_size(self):
        self.assertEqual(len(generate_scenarios(ci_grid())), 150)
        self.assertEqual(len(generate_scenarios(ci_grid(findings=1))), 30)

    def test_ci_grid_is_conditionally_independent(self):
        for scenario in generate_scenarios(ci_grid()):
            self.assertIsNotNone(scenario.model)
            self.assertTrue(is_conditionally_independent(scenario.dist))

    def test_ids_are_ordered(self):
        ids = [s.id for s in generate_scenarios(ci_random(seed=3, samples=12))]
        self.assertEqual(ids, sorted(ids))
        self.assertEqual(ids[0], "ci-random/0000")

    def test_random_families_are_deterministic(self):
        for make in (ci_random, general_random):
            first = generate_scenarios(make(seed=42, samples=20, findings=3))
            second = generate_scenarios(make(seed=42, samples=20, findings=3))
            self.assertEqual([s.dist for s in first], [s.dist for s in second])

    def test_seeds_differ(self):
        first = generate_scenarios(general_random(seed=1, samples=5))
        second = generate_scenarios(general_random(seed=2, samples=5))
        self.assertNotEqual([s.dist for s in first], [s.dist for s in second])

    def test_general_random_has_no_model(self):
        scenario = generate_scenarios(general_random(seed=0, samples=1))[0]
        self.assertIsNone(scenario.model)
        self.assertEqual(scenario.dist.schema, Schema("H", ("E1", "E2")))

    def test_explicit(self):
        family = explicit([mycin_counterexample_model()])
        self.assertEqual(family.findings, 2)
        (scenario,) = generate_scenarios(family)
        self.assertEqual(scenario.id, "explicit/0000")
        self.assertEqual(family.describe(), {"kind": "explicit", "models": 1})

    def test_empty_family(self):
        with self.assertRaises(exceptions.EmptyFamilyError):
            generate_scenarios(explicit([]))
        with self.assertRaises(exceptions.EmptyFamilyError):
            generate_scenarios(ci_random(samples=0))

    def test_unknown_family(self):
        with self.assertRaises(exceptions.FamilyNameError):
            ScenarioFamily("ci-lattice")
        with self.assertRaises(exceptions.FamilyNameError):
            create_family("ci-lattice")

    def test_findings_cap(self):
        with self.assertRaises(exceptions.EvidenceCapError):
            ci_grid(findings=17)

    def test_create_family(self):
        family = create_family(scenarios.CI_RANDOM, seed=9, samples=7, findings=3)
        self.assertEqual(
            family.describe(), {"kind": "ci-random", "findings": 3, "samples": 7, "seed": 9}
        )
        self.assertTrue(family.is_random)
        self.assertFalse(create_family(scenarios.CI_GRID).is_random)

    def test_counterexample_model(self):
        model = mycin_counterexample_model()
        self.assertEqual(model.prior, 0.01)
        for finding in model.findings:
            self.assertAlmostEqual(finding.ratio_present, 99.0, delta=1e-9)
        self.assertIsInstance(model, NaiveBayesModel)


class TestEnumerations(unittest.TestCase):
    def test_single_literals(self):
        self.assertEqual(
            [str(lit) for lit in single_literals(["E1", "E2"])], ["E1", "~E1", "E2", "~E2"]
        )

    def test_conjunctions(self):
        self.assertEqual(len(conjunctions(["E1", "E2"])), 8)
        self.assertNotIn(EvidenceSet(), conjunctions(["E1", "E2"]))

    def test_modularity_pairs(self):
        pairs = modularity_pairs(Schema("H", ("E1", "E2")))
        self.assertEqual(len(pairs), 8)
        self.assertIn((EvidenceSet.of("E2"), EvidenceSet.of("E1")), pairs)
        for evidence, context in pairs:
            self.assertTrue(context)
            self.assertFalse(evidence.variables & context.variables)
        self.assertEqual(len(modularity_pairs(Schema("H", ("E1", "E2", "E3")))), 48)
        self.assertEqual(modularity_pairs(Schema("H", ("E1",))), [])

    def test_update_triples(self):
        self.assertEqual(len(update_triples(Schema("H", ("E1", "E2")))), 8)
        triples = update_triples(Schema("H", ("E1", "E2", "E3")))
        self.assertEqual(len(triples), 72)
        self.assertIn(
            (Proposition("E1"), Proposition("E2", False), EvidenceSet.of("E3")), triples
        )


if __name__ == "__main__":
    unittest.main()
