# palinfix/core/words.py
"""Finite words, lazily extended infinite words, and palindrome helpers.

Letters are non-negative integers; ``a`` is 0, ``b`` is 1 and so on. The
alphabet is unbounded so that constructions introducing a fresh letter at
every step can use the same type.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Iterator, Sequence, TypeAlias

import numpy as np

from .errors import CodecError, NotAPrefix, StreamExhausted
from .kernels import as_letter_array, palindromic_prefix_mask

logger = logging.getLogger(__name__)

Letter: TypeAlias = int

DISPLAY_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def letter_from_symbol(symbol: str) -> Letter:
    """Maps ``'a'`` to 0, ``'b'`` to 1, ...; decimal strings map to themselves."""
    symbol = symbol.strip()
    if len(symbol) == 1 and symbol in DISPLAY_ALPHABET:
        return DISPLAY_ALPHABET.index(symbol)
    if symbol.isdigit():
        return int(symbol)
    raise CodecError(f"not a letter: {symbol!r}")


def letter_symbol(letter: Letter) -> str:
    if 0 <= letter < len(DISPLAY_ALPHABET):
        return DISPLAY_ALPHABET[letter]
    return str(letter)


@dataclass(frozen=True)
class FiniteWord:
    """Immutable finite word over integer letters."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        if not isinstance(self.letters, tuple):
            object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))

    @classmethod
    def of(cls, text: "str | Iterable[Letter] | FiniteWord") -> "FiniteWord":
        """Builds a word from display text (``"abac"`` or ``"0,3,3"``) or letters."""
        if isinstance(text, FiniteWord):
            return text
        if isinstance(text, str):
            return cls.parse(text)
        return cls(tuple(int(x) for x in text))

    @classmethod
    def parse(cls, text: str) -> "FiniteWord":
        text = text.strip()
        if not text:
            return cls(())
        if "," in text:
            return cls(tuple(letter_from_symbol(part) for part in text.split(",")))
        return cls(tuple(letter_from_symbol(ch) for ch in text))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, key):
        if isinstance(key, slice):
            return FiniteWord(self.letters[key])
        return self.letters[key]

    def __add__(self, other: "FiniteWord") -> "FiniteWord":
        return FiniteWord(self.letters + FiniteWord.of(other).letters)

    def __mul__(self, power: int) -> "FiniteWord":
        return FiniteWord(self.letters * power)

    def startswith(self, prefix: "FiniteWord") -> bool:
        prefix = FiniteWord.of(prefix)
        return self.letters[: len(prefix)] == prefix.letters

    def endswith(self, suffix: "FiniteWord") -> bool:
        suffix = FiniteWord.of(suffix)
        return len(suffix) <= len(self) and self.letters[len(self) - len(suffix):] == suffix.letters

    @cached_property
    def array(self) -> np.ndarray:
        return as_letter_array(self.letters)

    def alphabet(self) -> frozenset[Letter]:
        return frozenset(self.letters)

    def render(self) -> str:
        """One character per letter when every letter is below 26, else comma-separated indices."""
        if all(0 <= x < len(DISPLAY_ALPHABET) for x in self.letters):
            return "".join(DISPLAY_ALPHABET[x] for x in self.letters)
        return ",".join(str(x) for x in self.letters)

    def __str__(self) -> str:
        return self.render()


EMPTY = FiniteWord(())


def mirror(w: FiniteWord) -> FiniteWord:
    return FiniteWord(FiniteWord.of(w).letters[::-1])


def is_palindrome(w: FiniteWord) -> bool:
    letters = FiniteWord.of(w).letters
    return letters == letters[::-1]


def strip_prefix(w: FiniteWord, p: FiniteWord) -> FiniteWord:
    """Returns ``w''`` with ``w = p w''``."""
    w, p = FiniteWord.of(w), FiniteWord.of(p)
    if not w.startswith(p):
        raise NotAPrefix(f"{p.render()!r} is not a prefix of {w.render()!r}")
    return w[len(p):]


def strip_suffix(w: FiniteWord, s: FiniteWord) -> FiniteWord:
    """Returns ``w'`` with ``w = w' s``."""
    w, s = FiniteWord.of(w), FiniteWord.of(s)
    if not w.endswith(s):
        raise NotAPrefix(f"{s.render()!r} is not a suffix of {w.render()!r}")
    return w[: len(w) - len(s)]


def longest_palindromic_suffix(w: FiniteWord) -> int:
    """Length of the longest palindromic suffix of ``w`` (0 only for the empty word)."""
    w = FiniteWord.of(w)
    mask = palindromic_prefix_mask(as_letter_array(w.letters[::-1]))
    return int(np.flatnonzero(mask)[-1])


def palindromic_closure(w: FiniteWord) -> FiniteWord:
    """Shortest palindrome having ``w`` as a prefix."""
    w = FiniteWord.of(w)
    keep = len(w) - longest_palindromic_suffix(w)
    return FiniteWord(w.letters + w.letters[:keep][::-1])


# --- Lazily extended words ---


class WordStream:
    """An infinite (or finite) word materialised on demand from a chunk generator.

    The generator yields successive blocks of letters; prefix queries pull
    blocks until the buffer is long enough. Generators should let their blocks
    grow geometrically so that a prefix of length n costs O(log n) pulls.
    """

    def __init__(self, chunks: Iterable[Sequence[Letter]], name: str = ""):
        self._chunks = iter(chunks)
        self._buffer: list[Letter] = []
        self._exhausted = False
        self.name = name

    @classmethod
    def from_word(cls, word: FiniteWord, name: str = "") -> "WordStream":
        return cls(iter([FiniteWord.of(word).letters]), name=name)

    @classmethod
    def periodic(
        cls, period: Sequence[Letter], preperiod: Sequence[Letter] = (), name: str = ""
    ) -> "WordStream":
        """The ultimately periodic word ``preperiod period period ...``."""
        period = tuple(FiniteWord.of(period).letters)
        if not period:
            raise ValueError("period must be non-empty")
        head = tuple(FiniteWord.of(preperiod).letters)

        def chunks():
            yield head
            block = period
            while True:
                yield block
                if len(block) < 4096:
                    block = block + block
        return cls(chunks(), name=name)

    @classmethod
    def from_function(cls, letter_at: Callable[[int], Letter], name: str = "") -> "WordStream":
        """Word whose 0-based letter ``k`` is ``letter_at(k)``."""

        def chunks():
            start, size = 0, 64
            while True:
                yield [letter_at(k) for k in range(start, start + size)]
                start += size
                size *= 2
        return cls(chunks(), name=name)

    @property
    def materialized(self) -> int:
        return len(self._buffer)

    @property
    def exhausted(self) -> bool:
        return self._exhausted

    def _extend_to(self, n: int) -> None:
        while len(self._buffer) < n and not self._exhausted:
            try:
                chunk = next(self._chunks)
            except StopIteration:
                self._exhausted = True
                logger.debug(f"Stream {self.name or id(self)} ended at {len(self._buffer)}")
                break
            self._buffer.extend(chunk)

    def prefix(self, n: int) -> FiniteWord:
        """The length-``n`` prefix; raises StreamExhausted past the end of a finite word."""
        if n < 0:
            raise ValueError("prefix length must be non-negative")
        if len(self._buffer) < n:
            self._extend_to(n)
        if len(self._buffer) < n:
            raise StreamExhausted(n, len(self._buffer))
        return FiniteWord(tuple(self._buffer[:n]))

    def available_prefix(self, n: int) -> FiniteWord:
        """Up to ``n`` letters: the whole word when the stream is finite and shorter."""
        if len(self._buffer) < n:
            self._extend_to(n)
        return FiniteWord(tuple(self._buffer[:n]))

    def letter(self, i: int) -> Letter:
        """Letter at 0-based position ``i``."""
        if len(self._buffer) <= i:
            self._extend_to(i + 1)
        if len(self._buffer) <= i:
            raise StreamExhausted(i + 1, len(self._buffer))
        return self._buffer[i]


@dataclass(frozen=True)
class LetterSequence:
    """Eventually periodic letter sequence ``preperiod period^omega``."""

    preperiod: tuple[Letter, ...] = ()
    period: tuple[Letter, ...] = field(default=(0,))

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(FiniteWord.of(self.preperiod).letters))
        object.__setattr__(self, "period", tuple(FiniteWord.of(self.period).letters))
        if not self.period:
            raise ValueError("an infinite letter sequence needs a non-empty period")

    @classmethod
    def parse(cls, text: str) -> "LetterSequence":
        """``"ab(c)"`` or ``"(abc)"``: the parenthesised part repeats."""
        text = text.strip()
        if "(" in text:
            head, _, rest = text.partition("(")
            body = rest.rstrip(")")
            return cls(FiniteWord.parse(head).letters, FiniteWord.parse(body).letters)
        return cls((), FiniteWord.parse(text).letters)

    def term(self, n: int) -> Letter:
        """1-based term ``delta_n``."""
        q = len(self.preperiod)
        if n <= q:
            return self.preperiod[n - 1]
        return self.period[(n - q - 1) % len(self.period)]

    def prefix(self, count: int) -> FiniteWord:
        return FiniteWord(tuple(self.term(n) for n in range(1, count + 1)))

    def render(self) -> str:
        return f"{FiniteWord(self.preperiod).render()}({FiniteWord(self.period).render()})"
