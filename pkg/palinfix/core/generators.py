# palinfix/core/generators.py
"""Word constructions: unfolding a directive function, Sturmian and episturmian
words, the scarce-prefix family, the near-sqrt(3) family and seeded words.

Every construction grows a palindrome ``pi_i`` step by step. Since
``pi_{i+1}`` always starts with ``pi_i``, a construction is written as a
generator of ``(new_letters, step)`` pairs and ``_generated`` turns it into a
``GeneratedWord``: the profile is recorded eagerly up to the requested
length, and the stream keeps pulling pieces from the same generator.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .cf import IntSequence
from .errors import InvalidParameters, InvalidSpec, SeedMismatch
from .oracle import palindromic_prefixes
from .psi import (
    DirectiveFunctionSpec,
    ExplicitTail,
    OffsetTail,
    SturmianTail,
    episturmian_psi,
    psi_values,
)
from .values import ClosureStep, IndexValue, LetterValue, PalindromicProfile, PsiValue, SeedStep, Step
from .words import FiniteWord, Letter, LetterSequence, WordStream, is_palindrome

logger = logging.getLogger(__name__)

Piece = tuple[list[Letter], Step]


@dataclass(frozen=True)
class GeneratedWord:
    stream: WordStream
    profile: PalindromicProfile
    spec: DirectiveFunctionSpec | None = None

    def prefix(self, n: int) -> FiniteWord:
        return self.stream.prefix(n)

    @property
    def palindromes(self) -> list[FiniteWord]:
        """The recorded ``pi_i``."""
        longest = self.stream.prefix(self.profile.n[-1])
        return [longest[:n] for n in self.profile.n]


def _generated(
    pieces: Iterator[Piece],
    min_length: int,
    spec: DirectiveFunctionSpec | None = None,
    seed: Sequence[Letter] = (),
    seed_lengths: Sequence[int] = (0,),
    name: str = "",
) -> GeneratedWord:
    letters = list(seed)
    lengths = list(seed_lengths)
    steps: list[Step] = [SeedStep()] * (len(lengths) - 1)
    while lengths[-1] < min_length:
        piece = next(pieces, None)
        if piece is None:
            logger.debug(f"Construction {name} stopped at length {lengths[-1]}")
            break
        new, step = piece
        letters.extend(new)
        lengths.append(len(letters))
        steps.append(step)

    def chunks():
        yield letters
        for new, _ in pieces:
            yield new

    profile = PalindromicProfile(tuple(lengths), tuple(steps))
    return GeneratedWord(WordStream(chunks(), name=name), profile, spec)


# --- Unfolding a directive function ---


def _lazy_psi(spec: DirectiveFunctionSpec, first: int = 1) -> Iterator[PsiValue]:
    """``psi(first), psi(first + 1), ...``; finite for explicit tables."""
    if isinstance(spec.tail, ExplicitTail):
        yield from spec.table[first - 1 :]
        return
    done, batch = first - 1, 64
    while True:
        values = psi_values(spec, done + batch)
        yield from values[done:]
        done += batch
        batch *= 2


def _psi_pieces(
    values: Iterator[PsiValue], word: list[Letter], lengths: list[int]
) -> Iterator[Piece]:
    """Two-case recurrence on ``pi_i``; ``word`` and ``lengths`` hold the current state."""
    for value in values:
        n_i = lengths[-1]
        if isinstance(value, LetterValue):
            new = [value.letter] + word[:n_i]
        else:
            if value.index > len(lengths):
                raise InvalidSpec(f"psi({len(lengths)}) = {value.index} has no palindrome yet")
            new = word[lengths[value.index - 1] : n_i]
        word.extend(new)
        lengths.append(len(word))
        yield new, value


def word_from_psi(spec: DirectiveFunctionSpec, min_length: int) -> GeneratedWord:
    """The limit word of ``pi_1 = empty``, ``pi_{i+1}`` from ``pi_i`` and ``psi(i)``."""
    if min_length < 1:
        raise InvalidParameters("min_length must be positive")
    pieces = _psi_pieces(_lazy_psi(spec), [], [0])
    return _generated(pieces, min_length, spec, name="psi")


def seeded_word(
    seed: FiniteWord, spec: DirectiveFunctionSpec, min_length: int, i0: int | None = None
) -> GeneratedWord:
    """Continues the directive-function recurrence from a seed palindrome.

    The seed plays the part of ``pi_{i0}``; its own palindromic prefixes are
    ``pi_1 .. pi_{i0}`` and ``spec`` is only consulted for ``i >= i0``.
    """
    seed = FiniteWord.of(seed)
    if not is_palindrome(seed):
        raise SeedMismatch(f"seed {seed.render()!r} is not a palindrome")
    lengths = list(palindromic_prefixes(seed).lengths)
    if i0 is not None and len(lengths) != i0:
        raise SeedMismatch(
            f"seed {seed.render()!r} has {len(lengths)} palindromic prefixes, expected {i0}"
        )
    pieces = _psi_pieces(_lazy_psi(spec, first=len(lengths)), list(seed.letters), list(lengths))
    return _generated(pieces, min_length, spec, seed=seed.letters, seed_lengths=lengths, name="seeded")


# --- Sturmian words ---


def sturmian_standard_sequence(s: IntSequence, n: int) -> FiniteWord:
    """``sigma_0 = a``, ``sigma_1 = a^{s_1 - 1} b``, ``sigma_n = sigma_{n-1}^{s_n} sigma_{n-2}``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    older, current = (0,), (0,) * (s.term(1) - 1) + (1,)
    if n == 0:
        return FiniteWord(older)
    for k in range(2, n + 1):
        older, current = current, current * s.term(k) + older
    return FiniteWord(current)


def _standard_pieces(s: IntSequence) -> Iterator[list[Letter]]:
    older, current = (0,), (0,) * (s.term(1) - 1) + (1,)
    yield list(current)
    k = 2
    while True:
        following = current * s.term(k) + older
        yield list(following[len(current) :])
        older, current = current, following
        k += 1


def sturmian_psi(s: IntSequence) -> DirectiveFunctionSpec:
    if not s.period:
        raise InvalidParameters("the slope needs infinitely many partial quotients")
    return DirectiveFunctionSpec((), SturmianTail(s))


def sturmian_word(s: IntSequence, min_length: int) -> GeneratedWord:
    """Characteristic Sturmian word of slope ``[0; s_1, s_2, ...]``.

    Letters come from the standard sequence; the profile comes from
    unfolding the matching directive function.
    """
    spec = sturmian_psi(s)
    profile = word_from_psi(spec, min_length).profile
    stream = WordStream(_standard_pieces(s), name=f"sturmian {s.render()}")
    return GeneratedWord(stream, profile, spec)


def sturmian_directive(s: IntSequence) -> LetterSequence:
    """``a^{s_1 - 1} b^{s_2} a^{s_3} ...`` as an eventually periodic letter sequence."""
    if not s.period:
        raise InvalidParameters("the slope needs infinitely many partial quotients")

    def block(k: int) -> tuple[Letter, ...]:
        letter = 0 if k % 2 else 1
        return (letter,) * (s.term(k) - 1 if k == 1 else s.term(k))

    q, p = len(s.preperiod), len(s.period)
    cycle = p if p % 2 == 0 else 2 * p
    # block 1 is shorter than its later repetitions, so it always sits in the head
    start = max(q, 1)
    head = tuple(x for k in range(1, start + 1) for x in block(k))
    body = tuple(x for k in range(start + 1, start + cycle + 1) for x in block(k))
    return LetterSequence(head, body)


# --- Episturmian words ---


def _closure_pieces(delta: LetterSequence) -> Iterator[Piece]:
    """Iterated palindromic closure, one closure step per piece.

    ``word`` is always a palindrome and ``lengths`` lists all of its palindromic
    prefixes, so the longest palindromic suffix of ``word + letter`` is
    ``letter m letter`` for the longest such prefix ``m`` followed by ``letter``.
    """
    word: list[Letter] = []
    lengths = [0]
    n = 1
    while True:
        letter = delta.term(n)
        suffix = next((m + 2 for m in reversed(lengths) if m < len(word) and word[m] == letter), 1)
        keep = len(word) + 1 - suffix
        new = [letter] + word[:keep][::-1]
        word.extend(new)
        lengths.append(len(word))
        n += 1
        yield new, ClosureStep(letter)


def episturmian_word(delta: "LetterSequence | str", min_length: int) -> GeneratedWord:
    """Standard episturmian word by iterated palindromic closure."""
    if isinstance(delta, str):
        delta = LetterSequence.parse(delta)
    if min_length < 1:
        raise InvalidParameters("min_length must be positive")
    return _generated(_closure_pieces(delta), min_length, episturmian_psi(delta), name="closure")


# --- Scarce palindromic prefixes ---


def _fraction(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(str(value))


def scarce_lengths(alpha, epsilon, count: int) -> list[int]:
    """``n_1 .. n_count`` of the scarce construction with ``limsup n_{i+1}/n_i = alpha``."""
    alpha, epsilon = _fraction(alpha), _fraction(epsilon)
    if epsilon <= 0 or alpha <= 2 + epsilon:
        raise InvalidParameters(f"need epsilon > 0 and alpha > 2 + epsilon, got {alpha}, {epsilon}")
    if count < 2:
        raise InvalidParameters("count must be at least 2")
    n = [0, 1]
    v = 0
    while len(n) < count:
        i = len(n)
        n_i = n[-1]
        if i % 2 == 0:
            low, high = 2 * n_i, (2 + epsilon) * n_i + 1
            v = 0
            while (2 * n_i // 10 ** (v + 1) + 1) * 10 ** (v + 1) < high:
                v += 1
            scale = 10**v
            n.append((low // scale + 1) * scale)
        else:
            p_v = math.ceil(alpha * 10**v)
            n.append(p_v * n_i // 10**v)
    return n


def scarce_word(
    alpha, epsilon, max_word_length: int, max_sequence_terms: int
) -> tuple[GeneratedWord, list[int]]:
    """Word whose palindromic prefixes are exactly the ``pi_i``, over a growing alphabet.

    Letter ``i`` is the fresh letter of step ``i``; letter 0 fills the gaps.
    The word is truncated at ``max_word_length`` and the lengths continue
    symbolically to ``max_sequence_terms``.
    """
    lengths = scarce_lengths(alpha, epsilon, max(max_sequence_terms, 2))
    word: list[Letter] = []
    recorded = [0]
    steps: list[Step] = []
    for i, (n_i, n_next) in enumerate(zip(lengths, lengths[1:]), start=1):
        if len(word) >= max_word_length:
            break
        if n_next == 2 * n_i + 1:
            new = [i] + word[:n_i]
        else:
            new = [i] + [0] * (n_next - 2 * n_i - 2) + [i] + word[:n_i]
        word.extend(new)
        if len(word) <= max_word_length:
            recorded.append(n_next)
            steps.append(LetterValue(i))
    truncated = FiniteWord(tuple(word[:max_word_length]))
    logger.debug(f"Scarce word materialised to {len(truncated)} letters, {len(recorded)} prefixes")
    generated = GeneratedWord(
        WordStream.from_word(truncated, name=f"scarce alpha={alpha}"),
        PalindromicProfile(tuple(recorded), tuple(steps)),
    )
    return generated, lengths


# --- Near-sqrt(3) family ---


def _phi(n: int, r: int) -> int:
    if r == 0:
        return 3
    if r <= n:
        return 2
    return (2, 1, 3)[(r - n - 1) % 3]


def _near_sqrt3_block(n: int) -> tuple[int, ...]:
    period = 4 * n + 1
    return tuple(_phi(n, (j + 3) % period) for j in range(period))


def near_sqrt3_psi(n: int) -> DirectiveFunctionSpec:
    """``psi_n(1) = a``, ``psi_n(2) = b``, ``psi_n(i) = i - phi_n(i mod (4n + 1))``."""
    if n < 2:
        raise InvalidParameters("n must be at least 2")
    return DirectiveFunctionSpec((LetterValue(0), LetterValue(1)), OffsetTail(_near_sqrt3_block(n)))


def near_sqrt3_concatenation(ns: Sequence[int], repeats: int = 1) -> DirectiveFunctionSpec:
    """Offset blocks of ``psi_{n_1}, psi_{n_2}, ...`` in sequence, the last one repeating forever."""
    ns = [int(n) for n in ns]
    if not ns or any(n < 2 for n in ns) or repeats < 1:
        raise InvalidParameters("need n >= 2 for every block and repeats >= 1")
    table: list[PsiValue] = [LetterValue(0), LetterValue(1)]
    for n in ns[:-1]:
        for offset in _near_sqrt3_block(n) * repeats:
            i = len(table) + 1
            table.append(IndexValue(i - offset))
    return DirectiveFunctionSpec(tuple(table), OffsetTail(_near_sqrt3_block(ns[-1])))
