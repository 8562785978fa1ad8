import math
import unittest

from evicalc import exceptions
from evicalc.calculi.likelihood import (
    LikelihoodRatioMeasure,
    WeightOfEvidenceMeasure,
    combine_lambdas,
    combine_weights,
    parse_log_base,
    posterior_from_lambda,
    posterior_from_weight,
    weight_of_evidence,
)
from evicalc.calculi.value import CalculusValue
from evicalc.probability.joint import EvidenceSet, Proposition
from evicalc.probability.naivebayes import NaiveBayesModel, joint_from_naive_bayes

H, E1, E2 = Proposition("H"), Proposition("E1"), Proposition("E2")


class TestLogBase(unittest.TestCase):
    def test_named_bases(self):
        self.assertEqual(parse_log_base(None), math.e)
        self.assertEqual(parse_log_base("e"), math.e)
        self.assertEqual(parse_log_base("10"), 10.0)
        self.assertEqual(parse_log_base(" 2 "), 2.0)
        self.assertEqual(parse_log_base("3.5"), 3.5)
        self.assertEqual(parse_log_base(4), 4.0)

    def test_invalid_bases(self):
        for base in ("1", "0", "-2", "ten", float("inf")):
            with self.subTest(base=base):
                with self.assertRaises(exceptions.LogBaseError):
                    parse_log_base(base)


class TestPosteriorReconstruction(unittest.TestCase):
    def test_two_weights_of_ln_99(self):
        weight = math.log(99.0)
        self.assertAlmostEqual(
            posterior_from_weight(0.01, combine_weights([weight, weight])), 0.99, delta=1e-12
        )

    def test_base_is_respected(self):
        natural = posterior_from_weight(0.2, math.log(5.0))
        decimal = posterior_from_weight(0.2, math.log10(5.0), "10")
        self.assertAlmostEqual(natural, decimal, delta=1e-12)
        self.assertAlmostEqual(natural, posterior_from_lambda(0.2, 5.0), delta=1e-12)

    def test_zero_weight_keeps_prior(self):
        self.assertAlmostEqual(posterior_from_weight(0.3, 0.0), 0.3, delta=1e-15)

    def test_extreme_weights_do_not_overflow(self):
        self.assertEqual(posterior_from_weight(0.5, 1e6), 1.0)
        self.assertEqual(posterior_from_weight(0.5, -1e6), 0.0)
        self.assertEqual(posterior_from_lambda(0.5, float("inf")), 1.0)

    def test_degenerate_prior(self):
        for prior in (0.0, 1.0):
            with self.assertRaises(exceptions.DegenerateBeliefError):
                posterior_from_weight(prior, 1.0)


class TestCombinators(unittest.TestCase):
    def test_combine_lambdas(self):
        self.assertEqual(combine_lambdas(3.0, 0.5), 1.5)
        with self.assertRaises(exceptions.CalculusRangeError):
            combine_lambdas(0.0, 2.0)

    def test_combine_weights_is_exact_sum(self):
        self.assertEqual(combine_weights([0.1] * 10), 1.0)
        self.assertEqual(combine_weights([]), 0.0)


class TestMeasures(unittest.TestCase):
    def setUp(self):
        self.dist = joint_from_naive_bayes(NaiveBayesModel.from_ratios(0.01, (99.0, 99.0)))

    def test_lambda_measure(self):
        measure = LikelihoodRatioMeasure()
        self.assertAlmostEqual(measure(self.dist, H, E2, E1), 99.0, delta=1e-9)
        combined = measure.combine(CalculusValue("lambda", 99.0), CalculusValue("lambda", 99.0))
        self.assertAlmostEqual(
            combined.value, measure(self.dist, H, EvidenceSet.of(E1, E2)), delta=1e-6
        )
        self.assertTrue(measure.has_combinator())

    def test_weight_measure(self):
        measure = WeightOfEvidenceMeasure("2")
        self.assertAlmostEqual(measure(self.dist, H, E1), math.log2(99.0), delta=1e-9)
        self.assertEqual(measure.describe(), {"name": "weight", "kind": "weight", "log_base": 2.0})

    def test_weight_of_negated_evidence(self):
        self.assertAlmostEqual(
            weight_of_evidence(self.dist, H, ~E1), -math.log(99.0), delta=1e-9
        )


if __name__ == "__main__":
    unittest.main()
