import itertools
import math
import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from evicalc import exceptions
from evicalc.calculi.certainty import (
    CertaintyFactorMeasure,
    certainty_factor,
    certainty_factor_conditional,
    cf_from_posteriors,
    mycin_combine,
)
from evicalc.probability.joint import (
    EvidenceSet,
    Proposition,
    Schema,
    conditional,
    joint_from_table,
)
from evicalc.probability.naivebayes import NaiveBayesModel, joint_from_naive_bayes

H, E1, E2 = Proposition("H"), Proposition("E1"), Proposition("E2")
GRID = [round(-1.0 + 0.1 * i, 10) for i in range(21)]


class TestMycinCombine(unittest.TestCase):
    def test_commutative(self):
        for a, b in itertools.product(GRID, repeat=2):
            if {a, b} == {1.0, -1.0}:
                continue
            self.assertEqual(mycin_combine(a, b), mycin_combine(b, a))

    def test_associative(self):
        for a, b, c in itertools.product(GRID, repeat=3):
            if {1.0, -1.0} <= {a, b, c}:
                with self.assertRaises(exceptions.ContradictoryCertaintyError):
                    mycin_combine(mycin_combine(a, b), c)
                with self.assertRaises(exceptions.ContradictoryCertaintyError):
                    mycin_combine(a, mycin_combine(b, c))
                continue
            left = mycin_combine(mycin_combine(a, b), c)
            right = mycin_combine(a, mycin_combine(b, c))
            self.assertAlmostEqual(left, right, delta=1e-12, msg=(a, b, c))

    def test_zero_is_identity(self):
        for a in GRID:
            self.assertEqual(mycin_combine(a, 0.0), a)

    def test_closed_on_range(self):
        for a, b in itertools.product(GRID, repeat=2):
            if {a, b} == {1.0, -1.0}:
                continue
            self.assertTrue(-1.0 <= mycin_combine(a, b) <= 1.0)

    def test_branches(self):
        self.assertAlmostEqual(mycin_combine(0.5, 0.5), 0.75, delta=1e-15)
        self.assertAlmostEqual(mycin_combine(-0.5, -0.5), -0.75, delta=1e-15)
        self.assertAlmostEqual(mycin_combine(0.6, -0.2), 0.5, delta=1e-15)
        self.assertEqual(mycin_combine(1.0, -0.5), 1.0)

    def test_contradiction(self):
        with self.assertRaises(exceptions.ContradictoryCertaintyError):
            mycin_combine(1.0, -1.0)

    def test_out_of_range(self):
        with self.assertRaises(exceptions.CalculusRangeError):
            mycin_combine(1.2, 0.0)


class TestCertaintyFactor(unittest.TestCase):
    def test_from_posteriors(self):
        self.assertAlmostEqual(cf_from_posteriors(0.01, 0.5), 0.49 / 0.99, delta=1e-15)
        self.assertAlmostEqual(cf_from_posteriors(0.5, 0.25), -0.5, delta=1e-15)
        self.assertEqual(cf_from_posteriors(0.3, 0.3), 0.0)

    def test_degenerate_prior(self):
        with self.assertRaises(exceptions.DegenerateBeliefError):
            cf_from_posteriors(1.0, 1.0)

    def test_same_sign_updates_combine_exactly(self):
        dist = joint_from_naive_bayes(NaiveBayesModel.from_ratios(0.01, (99.0, 99.0)))
        cf1 = certainty_factor_conditional(dist, H, E1)
        cf2 = certainty_factor_conditional(dist, H, E2, E1)
        cf12 = certainty_factor_conditional(dist, H, EvidenceSet.of(E1, E2))
        self.assertAlmostEqual(mycin_combine(cf1, cf2), cf12, delta=1e-12)

    def test_counterexample_deviation(self):
        dist = joint_from_naive_bayes(NaiveBayesModel.from_ratios(0.01, (99.0, 99.0)))
        cf_alone = certainty_factor_conditional(dist, H, E2)
        cf_after = certainty_factor_conditional(dist, H, E2, E1)
        self.assertAlmostEqual(cf_alone, 0.49 / 0.99, delta=1e-9)
        self.assertAlmostEqual(cf_after, 0.98, delta=1e-9)
        self.assertAlmostEqual(abs(cf_after - cf_alone), 0.48505, delta=1e-4)

    def test_conditional_degenerate(self):
        dist = joint_from_table(Schema("H", ("E1",)), [0.5, 0.0, 0.0, 0.5])
        with self.assertRaises(exceptions.DegenerateBeliefError):
            certainty_factor_conditional(dist, H, E1, E1)

    @settings(max_examples=200, deadline=None)
    @given(
        st.lists(st.floats(min_value=1e-3, max_value=1.0), min_size=8, max_size=8).map(
            lambda xs: [x / math.fsum(xs) for x in xs]
        )
    )
    def test_range_and_sign(self, table):
        dist = joint_from_table(Schema("H", ("E1", "E2")), table)
        for evidence in (E1, ~E2, EvidenceSet.of(E1, E2)):
            cf = certainty_factor(dist, H, evidence)
            self.assertTrue(-1.0 <= cf <= 1.0)
            change = conditional(dist, H, evidence) - conditional(dist, H)
            if abs(change) > 1e-12:
                self.assertEqual(math.copysign(1.0, cf), math.copysign(1.0, change))

    def test_measure_combinator(self):
        measure = CertaintyFactorMeasure()
        self.assertTrue(measure.has_combinator())
        dist = joint_from_naive_bayes(NaiveBayesModel.from_ratios(0.5, (3.0,)))
        half = measure.evaluate(dist, H, E1)
        self.assertAlmostEqual(half.value, 0.5, delta=1e-12)
        self.assertAlmostEqual(measure.combine(half, half).value, 0.75, delta=1e-12)


if __name__ == "__main__":
    unittest.main()
