import unittest

from evicalc import exceptions


class TestExceptions(unittest.TestCase):
    def test_table_arity_error(self):
        with self.assertRaises(exceptions.TableArityError) as ctx:
            raise exceptions.TableArityError(8, 4)
        self.assertEqual((ctx.exception.expected, ctx.exception.received), (8, 4))
        self.assertEqual(str(ctx.exception), "Expected 8 table entries, received 4.")

    def test_kind_mismatch_error(self):
        with self.assertRaises(exceptions.KindMismatchError) as ctx:
            raise exceptions.KindMismatchError("weight", "cf")
        self.assertIn("'cf'", str(ctx.exception))
        self.assertIn("'weight'", str(ctx.exception))

    def test_kind_mismatch_error_with_message(self):
        with self.assertRaises(exceptions.KindMismatchError):
            raise exceptions.KindMismatchError("Expected", "Received", "Message")

    def test_every_error_is_an_evicalc_error(self):
        errors = [
            exceptions.NegativeProbabilityError,
            exceptions.ZeroMassError,
            exceptions.NotNormalizedError,
            exceptions.UnknownVariableError,
            exceptions.InconsistentEvidenceError,
            exceptions.EvidenceCapError,
            exceptions.ParameterRangeError,
            exceptions.ConditioningOnZeroMassError,
            exceptions.DegenerateBeliefError,
            exceptions.UndefinedRatioError,
            exceptions.CalculusRangeError,
            exceptions.ContradictoryCertaintyError,
            exceptions.MeasureNameError,
            exceptions.ThresholdError,
            exceptions.LogBaseError,
            exceptions.FamilyNameError,
            exceptions.EmptyFamilyError,
            exceptions.DemoNameError,
            exceptions.DuplicateRuleError,
            exceptions.ModelFileError,
            exceptions.RulebaseFileError,
            exceptions.CaseFileError,
        ]
        for error in errors:
            with self.subTest(error=error.__name__):
                with self.assertRaises(exceptions.EvicalcError):
                    raise error


if __name__ == "__main__":
    unittest.main()
