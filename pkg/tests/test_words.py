"""
Tests for finite words, word streams and palindrome helpers.
"""
import itertools
import random
import unittest

from palinfix.core.errors import CodecError, NotAPrefix, StreamExhausted
from palinfix.core.words import (
    FiniteWord,
    LetterSequence,
    WordStream,
    is_palindrome,
    longest_palindromic_suffix,
    mirror,
    palindromic_closure,
    strip_prefix,
    strip_suffix,
)


class TestFiniteWord(unittest.TestCase):
    """Parsing, rendering and basic operations."""

    def test_parse_letters_and_indices(self):
        self.assertEqual(FiniteWord.parse("abc").letters, (0, 1, 2))
        self.assertEqual(FiniteWord.parse("0,3,30").letters, (0, 3, 30))
        self.assertEqual(len(FiniteWord.parse("")), 0)

    def test_render_switches_to_indices_for_large_letters(self):
        self.assertEqual(FiniteWord((0, 1, 0)).render(), "aba")
        self.assertEqual(FiniteWord((0, 30)).render(), "0,30")

    def test_bad_symbol(self):
        with self.assertRaises(CodecError):
            FiniteWord.parse("a?b")

    def test_concatenation_power_and_slicing(self):
        w = FiniteWord.of("ab")
        self.assertEqual((w * 3 + FiniteWord.of("a")).render(), "abababa")
        self.assertEqual(FiniteWord.of("abcd")[1:3].render(), "bc")
        self.assertEqual(FiniteWord.of("abcd")[2], 2)

    def test_strip_prefix_and_suffix(self):
        self.assertEqual(strip_prefix("abcab", "ab").render(), "cab")
        self.assertEqual(strip_suffix("abcab", "cab").render(), "ab")
        with self.assertRaises(NotAPrefix):
            strip_prefix("abc", "b")
        with self.assertRaises(NotAPrefix):
            strip_suffix("abc", "a")


class TestPalindromes(unittest.TestCase):
    """Mirror image, palindromic suffixes and closure."""

    def test_mirror_and_palindrome(self):
        self.assertEqual(mirror("abc").render(), "cba")
        self.assertTrue(is_palindrome(""))
        self.assertTrue(is_palindrome("abacaba"))
        self.assertFalse(is_palindrome("abca"))

    def test_longest_palindromic_suffix(self):
        self.assertEqual(longest_palindromic_suffix(FiniteWord.of("abaab")), 4)
        self.assertEqual(longest_palindromic_suffix(FiniteWord.of("abc")), 1)
        self.assertEqual(longest_palindromic_suffix(FiniteWord(())), 0)

    def test_palindromic_closure(self):
        self.assertEqual(palindromic_closure("abac").render(), "abacaba")
        self.assertEqual(palindromic_closure("aab").render(), "aabaa")
        self.assertEqual(palindromic_closure("aba").render(), "aba")
        self.assertEqual(palindromic_closure("").render(), "")

    def test_palindromic_closure_is_shortest(self):
        words = [w for k in range(13) for w in itertools.product(range(2), repeat=k)]
        words += [w for k in range(8) for w in itertools.product(range(3), repeat=k)]
        for letters in words:
            w = FiniteWord(letters)
            shortest = next(
                w + mirror(w[:m]) for m in range(len(w) + 1) if is_palindrome(w + mirror(w[:m]))
            )
            self.assertEqual(palindromic_closure(w), shortest, w.render())

    def test_powers_between_nested_palindromes(self):
        rng = random.Random(3)
        for _ in range(200):
            w = FiniteWord(())
            while len(w) < 60:
                w = palindromic_closure(w + FiniteWord((rng.randrange(3),)))
            lengths = [n for n in range(len(w) + 1) if is_palindrome(w[:n])]
            a, b = sorted(rng.sample(lengths, 2))
            p, u = w[:a], w[a:b]
            for n in range(2, 6):
                self.assertTrue(is_palindrome(p + u * n), (p.render(), u.render(), n))
                self.assertEqual(mirror(u) * n + p, p + u * n)


class TestLetterSequence(unittest.TestCase):
    """Eventually periodic directive words."""

    def test_parse_and_terms(self):
        seq = LetterSequence.parse("ab(c)")
        self.assertEqual(seq.prefix(5).render(), "abccc")
        self.assertEqual(seq.render(), "ab(c)")
        self.assertEqual(LetterSequence.parse("abc").prefix(7).render(), "abcabca")


class TestWordStream(unittest.TestCase):
    """Lazily materialised words."""

    def test_periodic_stream(self):
        stream = WordStream.periodic("ab", preperiod="c")
        self.assertEqual(stream.prefix(6).render(), "cababa")
        self.assertEqual(stream.letter(10), 1)

    def test_finite_stream_is_exhausted(self):
        stream = WordStream.from_word(FiniteWord.of("abc"))
        self.assertEqual(stream.available_prefix(10).render(), "abc")
        self.assertTrue(stream.exhausted)
        with self.assertRaises(StreamExhausted):
            stream.prefix(4)

    def test_from_function_is_lazy(self):
        stream = WordStream.from_function(lambda k: k % 2)
        self.assertEqual(stream.prefix(3).render(), "aba")
        self.assertLess(stream.materialized, 1000)


if __name__ == "__main__":
    unittest.main()
