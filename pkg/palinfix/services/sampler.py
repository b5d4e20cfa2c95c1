# palinfix/services/sampler.py
"""Random directive functions for the verification suites.

Reduced tables are drawn constructively: every value is either ``i - 1``
(not a jump) or a jump value that already satisfies both reducedness
conditions against the previous jump. The tail is drawn afterwards and the
exact check decides acceptance.
"""

import logging
import random

from ..core.cf import IntSequence
from ..core.errors import InvalidSpec
from ..core.presets import DOUBLED_PREV
from ..core.psi import (
    DeltaTail,
    DirectiveFunctionSpec,
    OffsetTail,
    PrevTail,
    Reduced,
    SturmianTail,
    ViolationAt,
    is_reduced,
)
from ..core.values import IndexValue, LetterValue, PsiValue
from ..core.words import LetterSequence

logger = logging.getLogger(__name__)

# --- Limits ---
MAX_ALPHABET = 3
MAX_TABLE = 8
MAX_OFFSET = 4
MAX_OFFSET_PERIOD = 5
MAX_STURMIAN_ENTRY = 4
MAX_STURMIAN_PERIOD = 4
RETRIES = 50
SMALL_QUOTIENTS = (1, 1, 1, 1, 2, 3)


def _jump_options(i: int, previous_jump: int, previous_value: PsiValue, alphabet: int) -> list[PsiValue]:
    options: list[PsiValue] = [
        LetterValue(x) for x in range(alphabet) if LetterValue(x) != previous_value
    ]
    options += [
        IndexValue(j)
        for j in range(1, min(previous_jump, i - 1))
        if IndexValue(j) != previous_value
    ]
    return options


def random_reduced_table(rng: random.Random, length: int, alphabet: int) -> list[PsiValue]:
    """``psi(1..length)`` satisfying both reducedness conditions."""
    table: list[PsiValue] = [LetterValue(rng.randrange(alphabet))]
    previous_jump, previous_value = 1, table[0]
    for i in range(2, length + 1):
        options = _jump_options(i, previous_jump, previous_value, alphabet)
        if options and rng.random() < 0.5:
            value = rng.choice(options)
            previous_jump, previous_value = i, value
        else:
            value = IndexValue(i - 1)
        table.append(value)
    return table


def random_int_sequence(rng: random.Random, max_entry: int, max_period: int, max_preperiod: int = 2) -> IntSequence:
    pre = tuple(rng.randint(1, max_entry) for _ in range(rng.randint(0, max_preperiod)))
    period = tuple(rng.randint(1, max_entry) for _ in range(rng.randint(1, max_period)))
    return IntSequence(pre, period)


def random_sturmian_spec(rng: random.Random) -> DirectiveFunctionSpec:
    return DirectiveFunctionSpec(
        (), SturmianTail(random_int_sequence(rng, MAX_STURMIAN_ENTRY, MAX_STURMIAN_PERIOD))
    )


def _random_tail(rng: random.Random):
    kind = rng.choice(("prev", "offset", "sturmian"))
    if kind == "prev":
        return PrevTail()
    if kind == "offset":
        return OffsetTail(
            tuple(rng.randint(1, MAX_OFFSET) for _ in range(rng.randint(1, MAX_OFFSET_PERIOD)))
        )
    return None


def random_reduced_spec(rng: random.Random) -> DirectiveFunctionSpec:
    """A reduced spec with a PREV, OFFSET_PERIODIC or STURMIAN tail."""
    for _ in range(RETRIES):
        tail = _random_tail(rng)
        if tail is None:
            return random_sturmian_spec(rng)
        alphabet = rng.randint(1, MAX_ALPHABET)
        table = random_reduced_table(rng, rng.randint(1, MAX_TABLE), alphabet)
        try:
            spec = DirectiveFunctionSpec(tuple(table), tail)
        except InvalidSpec:
            continue
        if isinstance(is_reduced(spec), Reduced):
            return spec
    logger.debug("Sampler fell back to a Sturmian spec")
    return random_sturmian_spec(rng)


def random_free_tail_spec(rng: random.Random) -> DirectiveFunctionSpec:
    """Reduced specs with each tail entry drawn on its own.

    Directive letters and slope quotients are picked independently, with small
    quotients weighted up so that low-delta tails turn up often.
    """
    choice = rng.randrange(3)
    if choice == 0:
        alphabet = "abc"[: rng.randint(2, MAX_ALPHABET)]
        head = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 3)))
        period = "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 4)))
        return DirectiveFunctionSpec((), DeltaTail(LetterSequence.parse(f"{head}({period})")))
    if choice == 1:
        pre = tuple(rng.choice(SMALL_QUOTIENTS) for _ in range(rng.randint(0, 3)))
        period = tuple(rng.choice(SMALL_QUOTIENTS) for _ in range(rng.randint(1, MAX_STURMIAN_PERIOD)))
        return DirectiveFunctionSpec((), SturmianTail(IntSequence(pre, period)))
    return random_reduced_spec(rng)


# --- Non-reduced specs ---


def _doubled_prev(rng: random.Random) -> DirectiveFunctionSpec:
    """``psi(i) = psi(i + 1) = i - 1`` after a reduced head."""
    i = rng.randint(2, MAX_TABLE - 1)
    head = random_reduced_table(rng, i - 1, rng.randint(1, MAX_ALPHABET))
    table = head + [IndexValue(i - 1), IndexValue(i - 1)]
    return DirectiveFunctionSpec(tuple(table), rng.choice((PrevTail(), OffsetTail((2,)))))


def _repeated_jump(rng: random.Random) -> DirectiveFunctionSpec:
    """A jump whose value repeats the previous jump's value."""
    alphabet = rng.randint(2, MAX_ALPHABET)
    head = random_reduced_table(rng, rng.randint(1, MAX_TABLE - 3), alphabet)
    jumps = [
        n for n, v in enumerate(head, start=1)
        if isinstance(v, LetterValue) or v.index <= n - 2
    ]
    last = head[jumps[-1] - 1]
    table = list(head)
    for _ in range(rng.randint(0, 2)):
        table.append(IndexValue(len(table)))
    table.append(last)
    return DirectiveFunctionSpec(tuple(table), PrevTail())


def random_non_reduced_spec(rng: random.Random) -> tuple[DirectiveFunctionSpec, ViolationAt]:
    for _ in range(RETRIES):
        try:
            spec = _doubled_prev(rng) if rng.random() < 0.5 else _repeated_jump(rng)
        except InvalidSpec:
            continue
        status = is_reduced(spec)
        if isinstance(status, ViolationAt):
            return spec, status
    logger.debug("Sampler fell back to the doubled-prev preset")
    return DOUBLED_PREV, is_reduced(DOUBLED_PREV)
