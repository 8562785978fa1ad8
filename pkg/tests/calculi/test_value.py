import unittest

from evicalc import exceptions
from evicalc.calculi.value import (
    CF,
    EVOKING,
    KINDS,
    LAMBDA,
    POSTERIOR,
    WEIGHT,
    CalculusValue,
    identity,
)


class TestCalculusValue(unittest.TestCase):
    def test_identities(self):
        self.assertEqual(identity(LAMBDA).value, 1.0)
        self.assertEqual(identity(WEIGHT).value, 0.0)
        self.assertEqual(identity(CF).value, 0.0)
        self.assertEqual(identity(EVOKING).value, 0)

    def test_posterior_has_no_identity(self):
        with self.assertRaises(KeyError):
            identity(POSTERIOR)

    def test_out_of_range(self):
        cases = [
            (LAMBDA, 0.0),
            (LAMBDA, float("inf")),
            (WEIGHT, float("nan")),
            (CF, 1.5),
            (CF, -1.0001),
            (POSTERIOR, -0.1),
            (EVOKING, 6),
            (EVOKING, 2.5),
            (EVOKING, True),
        ]
        for kind, value in cases:
            with self.subTest(kind=kind, value=value):
                with self.assertRaises(exceptions.CalculusRangeError):
                    CalculusValue(kind, value)

    def test_unknown_kind(self):
        with self.assertRaises(exceptions.CalculusRangeError):
            CalculusValue("odds", 1.0)

    def test_evoking_is_int(self):
        value = CalculusValue(EVOKING, 3.0)
        self.assertIsInstance(value.value, int)
        self.assertEqual(str(value), "evoking=3")

    def test_float_conversion(self):
        self.assertEqual(float(CalculusValue(WEIGHT, -2)), -2.0)
        self.assertEqual(str(CalculusValue(CF, 0.75)), "cf=0.75")

    def test_kinds(self):
        self.assertEqual(set(KINDS), {LAMBDA, WEIGHT, CF, POSTERIOR, EVOKING})


if __name__ == "__main__":
    unittest.main()
