# palinfix/core/presets.py
"""Named directive-function specs for the command line."""

import logging
from typing import Callable

from .cf import IntSequence
from .errors import CodecError
from .generators import near_sqrt3_psi, sturmian_psi
from .psi import DirectiveFunctionSpec, OffsetTail, PrevTail, episturmian_psi
from .values import IndexValue, LetterValue

logger = logging.getLogger(__name__)

A, B, C = LetterValue(0), LetterValue(1), LetterValue(2)

FIBONACCI = DirectiveFunctionSpec((B, A), OffsetTail((2,)))
TRIBONACCI = DirectiveFunctionSpec((A, B, C), OffsetTail((3,)))
CONSTANT = DirectiveFunctionSpec((A,), PrevTail())
# psi(3) = psi(4) = 2 leaves a palindromic prefix outside the constructed pi_i
DOUBLED_PREV = DirectiveFunctionSpec((A, B, IndexValue(2), IndexValue(2)), OffsetTail((2,)))
ABACABA = DirectiveFunctionSpec((A, B, C), OffsetTail((2,)))

NAMED: dict[str, DirectiveFunctionSpec] = {
    "fibonacci": FIBONACCI,
    "tribonacci": TRIBONACCI,
    "constant": CONSTANT,
    "doubled-prev": DOUBLED_PREV,
    "abacaba": ABACABA,
}

PARAMETRISED: dict[str, Callable[[str], DirectiveFunctionSpec]] = {
    "sturmian": lambda arg: sturmian_psi(IntSequence.parse(arg)),
    "episturmian": episturmian_psi,
    "psi-n": lambda arg: near_sqrt3_psi(int(arg)),
}


def preset_names() -> list[str]:
    return sorted(NAMED) + [f"{name}:<arg>" for name in sorted(PARAMETRISED)]


def preset(name: str) -> DirectiveFunctionSpec:
    """``fibonacci``, ``sturmian:3;2,1``, ``episturmian:ab(c)``, ``psi-n:3`` and so on."""
    key, _, arg = name.strip().partition(":")
    if key in NAMED and not arg:
        return NAMED[key]
    factory = PARAMETRISED.get(key)
    if factory is None or not arg:
        raise CodecError(f"unknown preset {name!r}; known: {', '.join(preset_names())}")
    try:
        return factory(arg)
    except ValueError as e:
        raise CodecError(f"bad argument for preset {key!r}: {e}") from e
