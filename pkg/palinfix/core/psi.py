# palinfix/core/psi.py
"""Directive functions: finite descriptions, evaluation, reducedness and recovery.

A directive function maps every index ``n >= 1`` either to a letter or to
an earlier index ``1 <= j <= n - 1``. It is described by an explicit table
for ``1..m`` followed by one of a handful of tail schemes.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, TypeAlias

from .cf import IntSequence
from .errors import BeyondTable, InvalidSpec, MissingLength, NotAbundant
from .values import IndexValue, LetterValue, PalindromicProfile, PsiValue
from .words import FiniteWord, Letter, LetterSequence, WordStream, letter_symbol

logger = logging.getLogger(__name__)

__all__ = [
    "IntSequence",
    "LetterSequence",
    "PrevTail",
    "OffsetTail",
    "SturmianTail",
    "DeltaTail",
    "ExplicitTail",
    "DirectiveFunctionSpec",
    "PeriodicRegime",
    "TFamily",
    "Reduced",
    "ViolationAt",
    "VerifiedUpTo",
    "Strict",
    "NotStrict",
    "psi_value",
    "psi_values",
    "periodic_regime",
    "t_family",
    "is_reduced",
    "first_letters",
    "episturmian_psi",
    "is_A_strict",
    "recover_psi",
]


# --- Tail schemes ---


@dataclass(frozen=True)
class PrevTail:
    """``psi(i) = i - 1`` past the table."""

    kind = "prev"


@dataclass(frozen=True)
class OffsetTail:
    """``psi(i) = i - offsets[(i - m - 1) mod p]`` past the table."""

    offsets: tuple[int, ...]
    kind = "offset_periodic"

    def __post_init__(self):
        object.__setattr__(self, "offsets", tuple(int(x) for x in self.offsets))
        if not self.offsets or any(x < 1 for x in self.offsets):
            raise InvalidSpec(f"offsets must be positive and non-empty: {self.offsets}")


@dataclass(frozen=True)
class SturmianTail:
    """The characteristic Sturmian scheme for the slope ``[0; s_1, s_2, ...]``."""

    s: IntSequence
    kind = "sturmian"


@dataclass(frozen=True)
class DeltaTail:
    """Greatest previous occurrence in the directive word ``delta``."""

    delta: LetterSequence
    kind = "from_delta"


@dataclass(frozen=True)
class ExplicitTail:
    """No values past the table."""

    kind = "explicit"


Tail: TypeAlias = PrevTail | OffsetTail | SturmianTail | DeltaTail | ExplicitTail


@dataclass(frozen=True)
class DirectiveFunctionSpec:
    table: tuple[PsiValue, ...]
    tail: Tail

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))
        for n, value in enumerate(self.table, start=1):
            _check_site(n, value)
        m = len(self.table)
        if isinstance(self.tail, (PrevTail, OffsetTail)):
            if m == 0:
                raise InvalidSpec("psi(1) must be a letter; give it in the table")
            offsets = self.tail.offsets if isinstance(self.tail, OffsetTail) else (1,)
            for j, offset in enumerate(offsets):
                if m + 1 + j - offset < 1:
                    raise InvalidSpec(
                        f"offset {offset} at i={m + 1 + j} points below index 1"
                    )

    @property
    def table_length(self) -> int:
        return len(self.table)

    def describe(self) -> str:
        table = ", ".join(f"{n}->{v.render()}" for n, v in enumerate(self.table, start=1))
        return f"table {{{table}}} tail {self.tail.kind}"


def _check_site(n: int, value: PsiValue) -> None:
    if isinstance(value, LetterValue):
        if value.letter < 0:
            raise InvalidSpec(f"psi({n}) is a negative letter")
        return
    if not isinstance(value, IndexValue):
        raise InvalidSpec(f"psi({n}) has unsupported value {value!r}")
    if not 1 <= value.index <= n - 1:
        raise InvalidSpec(f"psi({n}) = {value.index} is outside 1..{n - 1}")


# --- Evaluation ---


def _sturmian_jumps(s: IntSequence, limit: int) -> list[int]:
    """``t_1 < t_2 < ...`` up to the first one exceeding ``limit``."""
    shift = 1 if s.term(1) == 1 else 0
    jumps = []
    total = sum(s.term(k) for k in range(1, shift + 1))
    k = 1
    while True:
        total += s.term(k + shift)
        jumps.append(total)
        if total > limit:
            return jumps
        k += 1


def _sturmian_values(s: IntSequence, count: int) -> list[PsiValue]:
    first, second = (LetterValue(0), LetterValue(1)) if s.term(1) >= 2 else (LetterValue(1), LetterValue(0))
    values: list[PsiValue] = [IndexValue(i - 1) for i in range(1, count + 1)]
    values[0] = first
    jumps = _sturmian_jumps(s, count)
    for k, t in enumerate(jumps, start=1):
        if t > count:
            break
        values[t - 1] = second if k == 1 else IndexValue(jumps[k - 2] - 1)
    return values


def _delta_values(delta: LetterSequence, count: int) -> list[PsiValue]:
    last_seen: dict[Letter, int] = {}
    values: list[PsiValue] = []
    for n in range(1, count + 1):
        letter = delta.term(n)
        previous = last_seen.get(letter)
        values.append(LetterValue(letter) if previous is None else IndexValue(previous))
        last_seen[letter] = n
    return values


def psi_values(spec: DirectiveFunctionSpec, count: int) -> list[PsiValue]:
    """``[psi(1), ..., psi(count)]``."""
    m = spec.table_length
    tail = spec.tail
    if count <= m:
        return list(spec.table[:count])
    if isinstance(tail, ExplicitTail):
        raise BeyondTable(count, m)
    if isinstance(tail, SturmianTail):
        values = _sturmian_values(tail.s, count)
    elif isinstance(tail, DeltaTail):
        values = _delta_values(tail.delta, count)
    else:
        offsets = tail.offsets if isinstance(tail, OffsetTail) else (1,)
        p = len(offsets)
        values = [IndexValue(i - offsets[(i - m - 1) % p]) for i in range(1, count + 1)]
    values[:m] = spec.table
    return values


def psi_value(spec: DirectiveFunctionSpec, n: int) -> PsiValue:
    if n < 1:
        raise ValueError("psi is defined on positive integers")
    m = spec.table_length
    tail = spec.tail
    if n <= m:
        return spec.table[n - 1]
    if isinstance(tail, (PrevTail, OffsetTail)):
        offsets = tail.offsets if isinstance(tail, OffsetTail) else (1,)
        return IndexValue(n - offsets[(n - m - 1) % len(offsets)])
    return psi_values(spec, n)[-1]


# --- Periodic regime ---


@dataclass(frozen=True)
class PeriodicRegime:
    """``psi(i) = i - offsets[(i - start) mod p]`` for every ``i >= start``."""

    start: int
    offsets: tuple[int, ...]

    @property
    def period(self) -> int:
        return len(self.offsets)

    def offset(self, i: int) -> int:
        return self.offsets[(i - self.start) % len(self.offsets)]

    @property
    def bound(self) -> int:
        return max(self.offsets)

    @property
    def finite_t_family(self) -> bool:
        return all(x == 1 for x in self.offsets)


def periodic_regime(spec: DirectiveFunctionSpec) -> PeriodicRegime | None:
    """The eventually periodic offset pattern of ``spec``; None for explicit tables."""
    m = spec.table_length
    tail = spec.tail
    if isinstance(tail, PrevTail):
        return PeriodicRegime(m + 1, (1,))
    if isinstance(tail, OffsetTail):
        return PeriodicRegime(m + 1, tail.offsets)
    if isinstance(tail, ExplicitTail):
        return None
    if isinstance(tail, DeltaTail):
        q, p = len(tail.delta.preperiod), len(tail.delta.period)
        start = max(m, q + p) + 1
    else:
        s = tail.s
        q, p = len(s.preperiod), sum(s.period)
        start = max(m, _sturmian_jumps_upto(s, q + 1)) + 1
    values = psi_values(spec, start + p - 1)
    offsets = []
    for i in range(start, start + p):
        value = values[i - 1]
        if not isinstance(value, IndexValue):
            raise InvalidSpec(f"letter value at i={i} inside the periodic regime")
        offsets.append(i - value.index)
    return PeriodicRegime(start, tuple(offsets))


def _sturmian_jumps_upto(s: IntSequence, k: int) -> int:
    """``t_k``."""
    shift = 1 if s.term(1) == 1 else 0
    return sum(s.term(j) for j in range(1, k + shift + 1))


def asymptotic_sturmian_gaps(spec: DirectiveFunctionSpec) -> tuple[int, ...] | None:
    """Gaps between jump indices if the regime behaves like a Sturmian scheme.

    That is the case when every jump index ``t`` inside the regime has
    ``psi(t)`` equal to the previous jump index minus one. Returns the gaps
    over one regime period, or None.
    """
    regime = periodic_regime(spec)
    if regime is None or regime.finite_t_family:
        return None
    start, p = regime.start, regime.period
    jumps = [i for i in range(start, start + 3 * p) if regime.offset(i) >= 2]
    for earlier, t in zip(jumps, jumps[1:]):
        if t - regime.offset(t) != earlier - 1:
            return None
    gaps = tuple(
        t - jumps[k - 1] for k, t in enumerate(jumps) if k > 0 and start + p <= t < start + 2 * p
    )
    return gaps or None


# --- t-family and reducedness ---


@dataclass(frozen=True)
class TFamily:
    indices: tuple[int, ...]
    exhaustive: bool


@dataclass(frozen=True)
class Reduced:
    def describe(self) -> str:
        return "Reduced"


@dataclass(frozen=True)
class ViolationAt:
    k: int
    condition: int
    index: int

    def describe(self) -> str:
        return f"ViolationAt k={self.k} (t_k={self.index}) condition {self.condition}"


@dataclass(frozen=True)
class VerifiedUpTo:
    horizon: int
    missing: frozenset = frozenset()

    def describe(self) -> str:
        return f"VerifiedUpTo {self.horizon}"


@dataclass(frozen=True)
class Strict:
    def describe(self) -> str:
        return "Strict"


@dataclass(frozen=True)
class NotStrict:
    missing: frozenset

    def describe(self) -> str:
        letters = ",".join(letter_symbol(x) for x in sorted(self.missing))
        return f"NotStrict {{{letters}}}"


def _jumps_of(values: list[PsiValue]) -> list[int]:
    return [
        n
        for n, value in enumerate(values, start=1)
        if isinstance(value, LetterValue) or value.index <= n - 2
    ]


def _checked_limit(spec: DirectiveFunctionSpec, horizon: int) -> tuple[int, bool]:
    """How far to evaluate, and whether the answer is then exact."""
    if isinstance(spec.tail, ExplicitTail):
        return min(horizon if horizon > 0 else spec.table_length, spec.table_length), False
    regime = periodic_regime(spec)
    return max(horizon, regime.start + 2 * regime.period), True


def t_family(spec: DirectiveFunctionSpec, horizon: int) -> TFamily:
    """Indices ``n <= horizon`` with a letter value or ``psi(n) <= n - 2``."""
    if horizon < 1:
        raise ValueError("horizon must be positive")
    limit = horizon
    if isinstance(spec.tail, ExplicitTail):
        limit = min(horizon, spec.table_length)
    indices = tuple(_jumps_of(psi_values(spec, limit)))
    regime = periodic_regime(spec)
    exhaustive = regime is not None and horizon >= regime.start + regime.period - 1
    return TFamily(indices, exhaustive)


def is_reduced(spec: DirectiveFunctionSpec, horizon: int = 0) -> Reduced | ViolationAt | VerifiedUpTo:
    """Checks both reducedness conditions on consecutive jump indices."""
    limit, exact = _checked_limit(spec, horizon)
    values = psi_values(spec, limit)
    jumps = _jumps_of(values)
    for k in range(1, len(jumps)):
        t, previous = jumps[k], jumps[k - 1]
        value, previous_value = values[t - 1], values[previous - 1]
        if value == previous_value:
            return ViolationAt(k, 1, t)
        if isinstance(value, IndexValue) and not value.index < previous:
            return ViolationAt(k, 2, t)
    return Reduced() if exact else VerifiedUpTo(limit)


# --- Words of first letters ---


def first_letters(spec: DirectiveFunctionSpec, count: int) -> FiniteWord:
    """``delta_1 ... delta_count``."""
    if count < 1:
        raise ValueError("count must be positive")
    delta: list[Letter] = []
    for n, value in enumerate(psi_values(spec, count), start=1):
        delta.append(value.letter if isinstance(value, LetterValue) else delta[value.index - 1])
    return FiniteWord(tuple(delta))


def episturmian_psi(delta: "LetterSequence | str") -> DirectiveFunctionSpec:
    if isinstance(delta, str):
        delta = LetterSequence.parse(delta)
    return DirectiveFunctionSpec((), DeltaTail(delta))


STRICT_STATE_LIMIT = 1_000_000


def is_A_strict(
    spec: DirectiveFunctionSpec, alphabet: "Iterable[Letter] | str", horizon: int = 10_000
) -> Strict | NotStrict | VerifiedUpTo:
    """Does every letter of ``alphabet`` occur infinitely often in the word of first letters?"""
    letters = frozenset(FiniteWord.of(alphabet).letters) if isinstance(alphabet, str) else frozenset(alphabet)
    if not letters:
        raise ValueError("alphabet must be non-empty")
    regime = periodic_regime(spec)
    if regime is not None:
        recurring = _recurring_letters(spec, regime, letters)
        if recurring is not None:
            missing = letters - recurring
            return Strict() if not missing else NotStrict(missing)
    limit = horizon
    if isinstance(spec.tail, ExplicitTail):
        limit = min(horizon, spec.table_length)
    delta = first_letters(spec, limit)
    late = frozenset(delta.letters[limit // 2:])
    return VerifiedUpTo(limit, letters - late)


def _recurring_letters(
    spec: DirectiveFunctionSpec, regime: PeriodicRegime, alphabet: frozenset
) -> frozenset | None:
    """Letters on the eventual cycle of the first-letter recurrence, or None if too large."""
    start, p, bound = regime.start, regime.period, regime.bound
    delta = list(first_letters(spec, start - 1).letters) if start > 1 else []
    symbols = len(alphabet | frozenset(delta)) or 1
    if p * symbols**bound > STRICT_STATE_LIMIT:
        logger.warning("State space too large for exact strictness check; using horizon.")
        return None
    seen: dict[tuple, int] = {}
    n = start
    while True:
        if n - bound >= 1:
            state = ((n - start) % p, tuple(delta[n - 1 - bound : n - 1]))
            if state in seen:
                return frozenset(delta[seen[state] - 1 : n - 1])
            seen[state] = n
        delta.append(delta[n - 1 - regime.offset(n)])
        n += 1


# --- Recovery from a word ---


def recover_psi(stream: WordStream, horizon_length: int) -> tuple[DirectiveFunctionSpec, PalindromicProfile]:
    """The unique reduced directive function of an abundant word, read off a prefix.

    ``psi(i)`` is recovered for every ``i`` with ``2 n_i + 1 <= L``, where
    ``L`` is the number of letters available, so the next palindromic prefix
    is guaranteed to be visible.
    """
    from .oracle import palindromic_prefixes

    word = stream.available_prefix(horizon_length)
    lengths = palindromic_prefixes(word).lengths
    limit = len(word)
    position = {n: i for i, n in enumerate(lengths, start=1)}
    table: list[PsiValue] = []
    used = [lengths[0]]
    for i in range(1, len(lengths) + 1):
        n_i = lengths[i - 1]
        if 2 * n_i + 1 > limit:
            break
        if i == len(lengths):
            raise NotAbundant(i, n_i, limit + 1)
        n_next = lengths[i]
        if n_next > 2 * n_i + 1:
            raise NotAbundant(i, n_i, n_next)
        if n_next == 2 * n_i + 1:
            table.append(LetterValue(word[n_i]))
        else:
            j = position.get(2 * n_i - n_next)
            if j is None:
                raise MissingLength(i, 2 * n_i - n_next)
            table.append(IndexValue(j))
        used.append(n_next)
    logger.debug(f"Recovered psi(1..{len(table)}) from {limit} letters")
    spec = DirectiveFunctionSpec(tuple(table), ExplicitTail())
    return spec, PalindromicProfile(tuple(used), tuple(table))
