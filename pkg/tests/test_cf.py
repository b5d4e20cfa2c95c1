"""
Tests for exact quadratic arithmetic, continued fractions, Sturmian deltas
and the spectrum scan.
"""
import unittest
from fractions import Fraction

from palinfix.core.cf import (
    FIBONACCI_RECURRENCE_QUOTIENT,
    GAMMA,
    GAP_UPPER,
    SIGMA_2,
    SIGMA_3,
    SQRT3,
    ContinuedFraction,
    IntSequence,
    QuadraticValue,
    cassaigne_condition,
    cf_convergent,
    cf_exact,
    delta_from_recurrence_quotient,
    recurrence_quotient,
    spectrum_scan,
    sqrt,
    sturmian_delta,
    sturmian_delta_numeric,
)
from palinfix.core.errors import CodecError, DomainError, NotPeriodic


class TestQuadraticValue(unittest.TestCase):
    """Normal form, arithmetic and exact comparison."""

    def test_normal_form(self):
        self.assertEqual(QuadraticValue(2, 2, 4, 8), QuadraticValue(1, 2, 2, 2))
        self.assertEqual(QuadraticValue(3, 1, 1, 4), QuadraticValue(5))
        self.assertEqual(QuadraticValue(1, 1, -2, 5), QuadraticValue(-1, -1, 2, 5))
        with self.assertRaises(DomainError):
            QuadraticValue(0, 1, 1, -3)

    def test_arithmetic(self):
        self.assertEqual(GAMMA * GAMMA, GAMMA + 1)
        self.assertEqual(GAMMA.inverse(), GAMMA - 1)
        self.assertEqual(sqrt(3) * sqrt(3), QuadraticValue(3))
        self.assertEqual((SQRT3 + 1) / 2 * 2, SQRT3 + 1)

    def test_comparisons(self):
        self.assertLess(GAMMA, SIGMA_2)
        self.assertLess(SIGMA_2, SIGMA_3)
        self.assertLess(SIGMA_3, SQRT3)
        self.assertLess(SQRT3, GAP_UPPER)
        self.assertEqual(SQRT3.compare(Fraction(7, 4)), -1)

    def test_floor_and_decimal(self):
        self.assertEqual(GAMMA.floor(), 1)
        self.assertEqual((-GAMMA).floor(), -2)
        self.assertEqual(GAMMA.decimal(6), "1.618033")
        self.assertEqual(SIGMA_2.decimal(3), "1.707")
        self.assertEqual(SIGMA_3.decimal(3), "1.720")
        self.assertEqual(SQRT3.decimal(4), "1.7320")
        self.assertEqual(GAP_UPPER.decimal(4), "1.7675")

    def test_parse(self):
        self.assertEqual(QuadraticValue.parse("(7+sqrt(13))/6"), GAP_UPPER)
        self.assertEqual(QuadraticValue.parse("sqrt(3)"), SQRT3)
        self.assertEqual(QuadraticValue.parse("2*sqrt(3)"), QuadraticValue(0, 2, 1, 3))
        self.assertEqual(QuadraticValue.parse("3/2"), QuadraticValue(3, 0, 2))
        self.assertEqual(QuadraticValue.parse("1.25"), QuadraticValue(5, 0, 4))
        with self.assertRaises(CodecError):
            QuadraticValue.parse("pi")

    def test_str(self):
        self.assertEqual(str(GAP_UPPER), "(7+sqrt(13))/6")
        self.assertEqual(str(SQRT3), "sqrt(3)")
        self.assertEqual(str(QuadraticValue(3, 0, 2)), "3/2")


class TestContinuedFractions(unittest.TestCase):
    """Eventually periodic continued fractions."""

    def test_exact_values(self):
        self.assertEqual(cf_exact(ContinuedFraction((1,), (1,))), GAMMA)
        self.assertEqual(cf_exact(ContinuedFraction.parse("[1; (2)]")), sqrt(2))
        self.assertEqual(cf_exact(ContinuedFraction.parse("[1; (1, 2)]")), SQRT3)

    def test_convergent(self):
        self.assertEqual(cf_convergent(ContinuedFraction((1,), (1,)), 5), Fraction(8, 5))

    def test_exact_agrees_with_deep_convergents(self):
        texts = ("[1; (1)]", "[1; (2)]", "[1; (1, 2)]", "[2; (1, 1, 1, 4)]", "[0; 2, 5, (1, 3)]", "[3; 1, (4, 1, 2)]")
        for text in texts:
            cf = ContinuedFraction.parse(text)
            exact, deep = float(cf_exact(cf)), float(cf_convergent(cf, 60))
            self.assertAlmostEqual(exact, deep, delta=1e-12, msg=text)

    def test_needs_a_period(self):
        with self.assertRaises(NotPeriodic):
            cf_exact(ContinuedFraction((1, 2)))


class TestIntSequence(unittest.TestCase):
    """Eventually periodic integer sequences."""

    def test_parse_and_render(self):
        s = IntSequence.parse("3;2,1")
        self.assertEqual((s.preperiod, s.period), ((3,), (2, 1)))
        self.assertEqual(s.render(), "3;2,1")
        self.assertEqual(s.terms(5), [3, 2, 1, 2, 1])

    def test_canonical(self):
        self.assertEqual(IntSequence((1, 2), (1, 2, 1, 2)).canonical(), IntSequence((), (1, 2)))

    def test_shifted(self):
        self.assertEqual(IntSequence((3,), (2, 1)).shifted(2), IntSequence((), (1, 2)))


class TestSturmianDelta(unittest.TestCase):
    """Exact densities of characteristic Sturmian words."""

    def test_exact_values(self):
        cases = {(1,): GAMMA, (2,): SIGMA_2, (1, 1, 2): SIGMA_3, (2, 1): SQRT3, (3,): GAP_UPPER}
        for period, expected in cases.items():
            self.assertEqual(sturmian_delta(IntSequence((), period)).exact, expected, period)

    def test_preperiod_does_not_matter(self):
        self.assertEqual(sturmian_delta(IntSequence((4, 1), (3,))).exact, GAP_UPPER)

    def test_numeric_suprema(self):
        estimate = sturmian_delta_numeric([1] * 40, burn_in=30)
        self.assertAlmostEqual(estimate.value, float(GAMMA), places=8)

    def test_large_quotients_push_delta_towards_two(self):
        values = [sturmian_delta(IntSequence((), (k,))).value for k in range(1, 9)]
        self.assertEqual(values, sorted(values))
        for k, value in enumerate(values, start=1):
            self.assertLess(value, 2)
            self.assertLess(2 - value, 1 / k)
        unbounded = sturmian_delta_numeric(list(range(1, 41)))
        self.assertGreater(unbounded.value, 1.97)
        self.assertLess(unbounded.value, 2)

    def test_recurrence_quotient(self):
        rho = recurrence_quotient(IntSequence((), (1,)))
        self.assertEqual(rho, FIBONACCI_RECURRENCE_QUOTIENT)
        self.assertEqual(delta_from_recurrence_quotient(rho), GAMMA)
        s = IntSequence((), (3,))
        self.assertEqual(delta_from_recurrence_quotient(recurrence_quotient(s)), sturmian_delta(s).exact)
        with self.assertRaises(DomainError):
            delta_from_recurrence_quotient(1)


class TestSpectrumScan(unittest.TestCase):
    """Cassaigne-admissible values around sqrt(3)."""

    def test_cassaigne_condition(self):
        self.assertTrue(cassaigne_condition(IntSequence((), (2, 1))))
        self.assertFalse(cassaigne_condition(IntSequence((), (1, 2))))

    def test_gap_is_empty(self):
        self.assertEqual(spectrum_scan(3, 4, 1, (SQRT3, GAP_UPPER)), [])

    def test_inclusive_scan_finds_the_endpoints(self):
        hits = spectrum_scan(3, 4, 1, (SQRT3, GAP_UPPER), inclusive=True)
        self.assertEqual([hit.b.render() for hit in hits], ["2,1", "3"])
        self.assertEqual(hits[0].row(), ("2,1", "sqrt(3)", "1.7320508075"))

    def test_golden_ratio_is_found(self):
        hits = spectrum_scan(2, 2, 0, (1, 2))
        self.assertIn("1", [hit.b.render() for hit in hits])


if __name__ == "__main__":
    unittest.main()
