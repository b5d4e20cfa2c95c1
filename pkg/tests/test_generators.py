"""
Tests for word generators: directive functions, seeds, Sturmian and
episturmian words, scarce prefixes and the near-sqrt(3) family.
"""
import unittest
from fractions import Fraction

from palinfix.core.cf import GAMMA, IntSequence
from palinfix.core.errors import InvalidParameters, SeedMismatch
from palinfix.core.generators import (
    episturmian_word,
    near_sqrt3_concatenation,
    near_sqrt3_psi,
    scarce_lengths,
    scarce_word,
    seeded_word,
    sturmian_directive,
    sturmian_standard_sequence,
    sturmian_word,
    word_from_psi,
)
from palinfix.core.oracle import palindromic_prefix_lengths_fast, palindromic_prefixes
from palinfix.core.presets import ABACABA, CONSTANT, FIBONACCI, TRIBONACCI
from palinfix.core.psi import DirectiveFunctionSpec, ExplicitTail, first_letters
from palinfix.core.values import LetterValue
from palinfix.core.words import FiniteWord, LetterSequence, palindromic_closure


def fibonacci_lengths(count):
    """``F_{i+1} - 2`` with ``F_1 = 1, F_2 = 2``."""
    f = [1, 2]
    while len(f) < count + 1:
        f.append(f[-1] + f[-2])
    return tuple(f[i] - 2 for i in range(1, count + 1))


class TestWordFromPsi(unittest.TestCase):
    """Unfolding directive functions."""

    def test_fibonacci(self):
        generated = word_from_psi(FIBONACCI, 13)
        self.assertEqual(generated.prefix(13).render(), "babbababbabba")

    def test_fibonacci_lengths_match_the_oracle(self):
        expected = fibonacci_lengths(20)
        generated = word_from_psi(FIBONACCI, 2 * expected[-1] + 2)
        self.assertEqual(generated.profile.n[:20], expected)
        word = generated.stream.prefix(2 * expected[-1] + 2)
        self.assertEqual(tuple(palindromic_prefix_lengths_fast(word)[:20]), expected)

    def test_tribonacci_and_constant(self):
        self.assertEqual(word_from_psi(TRIBONACCI, 15).prefix(15).render(), "abacabaabacabab")
        self.assertEqual(word_from_psi(CONSTANT, 5).prefix(5).render(), "aaaaa")

    def test_recorded_palindromes(self):
        generated = word_from_psi(TRIBONACCI, 7)
        self.assertEqual([p.render() for p in generated.palindromes], ["", "a", "aba", "abacaba"])

    def test_explicit_table_gives_a_finite_word(self):
        spec = DirectiveFunctionSpec((LetterValue(0), LetterValue(1)), ExplicitTail())
        generated = word_from_psi(spec, 100)
        self.assertEqual(generated.stream.available_prefix(100).render(), "aba")

    def test_min_length_must_be_positive(self):
        with self.assertRaises(InvalidParameters):
            word_from_psi(FIBONACCI, 0)


class TestSeededWord(unittest.TestCase):
    """Continuing the recurrence from a seed palindrome."""

    def test_tribonacci_from_aba(self):
        generated = seeded_word(FiniteWord.of("aba"), TRIBONACCI, 15, i0=3)
        self.assertEqual(generated.prefix(15).render(), "abacabaabacabab")
        self.assertEqual(generated.profile.n[:4], (0, 1, 3, 7))

    def test_seed_must_fit(self):
        with self.assertRaises(SeedMismatch):
            seeded_word(FiniteWord.of("ab"), TRIBONACCI, 10)
        with self.assertRaises(SeedMismatch):
            seeded_word(FiniteWord.of("aba"), TRIBONACCI, 10, i0=2)

    def test_abacaba_seed_has_golden_ratio_growth(self):
        generated = seeded_word(FiniteWord.of("abacaba"), ABACABA, 20_000, i0=4)
        n = generated.profile.n
        self.assertEqual(n[:4], (0, 1, 3, 7))
        self.assertEqual(generated.prefix(2000), word_from_psi(ABACABA, 2000).prefix(2000))
        self.assertAlmostEqual(n[-1] / n[-2], float(GAMMA), delta=1e-3)


class TestSturmian(unittest.TestCase):
    """Characteristic Sturmian words by three routes."""

    SLOPES = ("1", "2", "3", "2,1", "1,3", "3;2,1", "4;1,2", "1,1,2")

    def test_standard_sequence(self):
        s = IntSequence((), (1,))
        self.assertEqual(
            [sturmian_standard_sequence(s, n).render() for n in range(5)],
            ["a", "b", "ba", "bab", "babba"],
        )
        self.assertEqual(sturmian_standard_sequence(IntSequence((), (2,)), 2).render(), "ababa")

    def test_directive_word(self):
        self.assertEqual(sturmian_directive(IntSequence((), (1,))).prefix(6).render(), "bababa")
        self.assertEqual(sturmian_directive(IntSequence((), (2,))).prefix(5).render(), "abbaa")

    def test_three_routes_agree(self):
        for text in self.SLOPES:
            s = IntSequence.parse(text)
            standard = sturmian_word(s, 1500).prefix(1500)
            closure = episturmian_word(sturmian_directive(s), 1500).prefix(1500)
            self.assertEqual(standard, closure, text)
            self.assertEqual(standard, word_from_psi(sturmian_word(s, 1).spec, 1500).prefix(1500), text)

    def test_profile_matches_the_oracle(self):
        s = IntSequence.parse("3;2,1")
        generated = sturmian_word(s, 4000)
        report = palindromic_prefixes(generated.prefix(4000))
        expected = tuple(n for n in generated.profile.n if n <= report.safe_horizon)
        self.assertEqual(report.trusted(), expected)


class TestEpisturmian(unittest.TestCase):
    """Iterated palindromic closure."""

    def test_tribonacci(self):
        generated = episturmian_word("(abc)", 15)
        self.assertEqual(generated.prefix(15).render(), "abacabaabacabab")
        self.assertEqual(generated.profile.n[:6], (0, 1, 3, 7, 14, 27))

    def test_parsed_and_typed_inputs_agree(self):
        a = episturmian_word("ab(c)", 200).prefix(200)
        b = episturmian_word(LetterSequence.parse("ab(c)"), 200).prefix(200)
        self.assertEqual(a, b)

    def test_matches_repeated_closure(self):
        for directive in ("(ab)", "ab(bca)", "aab(cab)", "abbc(acb)", "(abcd)"):
            delta = LetterSequence.parse(directive)
            expected = FiniteWord(())
            n = 1
            while len(expected) < 1500:
                expected = palindromic_closure(expected + FiniteWord((delta.term(n),)))
                n += 1
            generated = episturmian_word(delta, 1500)
            self.assertEqual(generated.prefix(1500), expected[:1500], directive)
            self.assertEqual(generated.profile.n[:n], tuple(palindromic_prefix_lengths_fast(expected)))


class TestScarce(unittest.TestCase):
    """Words with scarce palindromic prefixes."""

    def test_lengths(self):
        self.assertEqual(scarce_lengths(3, Fraction(1, 2), 8), [0, 1, 3, 9, 20, 60, 130, 390])

    def test_growth_and_supremum(self):
        for alpha, epsilon in ((3, "1/2"), (Fraction(5, 2), "1/4"), (4, "1/2")):
            n = scarce_lengths(alpha, Fraction(epsilon), 41)
            for i in range(1, 40):
                self.assertGreaterEqual(n[i + 1], 2 * n[i] + 1)
            sup = max(n[i + 1] / n[i] for i in range(19, 40))
            self.assertLess(abs(sup - float(alpha)) / float(alpha), 0.02, alpha)

    def test_bad_parameters(self):
        with self.assertRaises(InvalidParameters):
            scarce_lengths(Fraction(5, 2), Fraction(1, 2), 10)
        with self.assertRaises(InvalidParameters):
            scarce_lengths(3, 0, 10)

    def test_word_has_exactly_the_recorded_prefixes(self):
        generated, lengths = scarce_word(3, Fraction(1, 2), 5000, 40)
        self.assertEqual(len(lengths), 40)
        word = generated.stream.available_prefix(5000)
        report = palindromic_prefixes(word)
        expected = tuple(n for n in generated.profile.n if n <= report.safe_horizon)
        self.assertEqual(report.trusted(), expected)
        self.assertEqual(expected, (0, 1, 3, 9, 20, 60, 130, 390, 800, 2400))


class TestNearSqrt3(unittest.TestCase):
    """The psi_n family and its concatenations."""

    def test_period(self):
        for n in range(2, 7):
            spec = near_sqrt3_psi(n)
            self.assertEqual(len(spec.tail.offsets), 4 * n + 1)

    def test_n_must_be_at_least_two(self):
        with self.assertRaises(InvalidParameters):
            near_sqrt3_psi(1)

    def test_differs_from_the_episturmian_word(self):
        spec = near_sqrt3_psi(3)
        delta = LetterSequence((), first_letters(spec, 13).letters)
        ours = word_from_psi(spec, 10_000).prefix(10_000)
        standard = episturmian_word(delta, 10_000).prefix(10_000)
        self.assertNotEqual(ours, standard)

    def test_concatenation(self):
        spec = near_sqrt3_concatenation([2, 3], repeats=2)
        self.assertEqual(spec.table_length, 2 + 2 * 9)
        self.assertEqual(spec.tail, near_sqrt3_psi(3).tail)
        with self.assertRaises(InvalidParameters):
            near_sqrt3_concatenation([])


if __name__ == "__main__":
    unittest.main()
