# palinfix/core/oracle.py
"""Ground-truth palindromic-prefix enumeration and the checks built on it."""

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidParameters
from .kernels import border_table, palindromic_prefix_mask
from .values import DeltaEstimate
from .words import FiniteWord, WordStream

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleReport:
    """All palindromic-prefix lengths of a scanned prefix of length ``scanned_length``."""

    lengths: tuple[int, ...]
    safe_horizon: int
    scanned_length: int

    def trusted(self) -> tuple[int, ...]:
        """Lengths within the safe horizon."""
        return tuple(n for n in self.lengths if n <= self.safe_horizon)

    def as_dict(self) -> dict:
        return {
            "lengths": list(self.lengths),
            "safe_horizon": self.safe_horizon,
            "scanned_length": self.scanned_length,
        }


def palindromic_prefix_lengths_naive(w: FiniteWord) -> list[int]:
    """Quadratic reference enumeration."""
    letters = FiniteWord.of(w).letters
    return [n for n in range(len(letters) + 1) if letters[:n] == letters[:n][::-1]]


def palindromic_prefix_lengths_fast(w: FiniteWord) -> list[int]:
    """Linear-time enumeration from palindromic radii."""
    mask = palindromic_prefix_mask(FiniteWord.of(w).array)
    return np.flatnonzero(mask).tolist()


def palindromic_prefixes(w: FiniteWord, naive: bool = False) -> OracleReport:
    w = FiniteWord.of(w)
    lengths = palindromic_prefix_lengths_naive(w) if naive else palindromic_prefix_lengths_fast(w)
    return OracleReport(tuple(lengths), len(w) // 2, len(w))


# --- Abundance ---


@dataclass(frozen=True)
class Abundant:
    def describe(self) -> str:
        return "Abundant"


@dataclass(frozen=True)
class FirstViolation:
    """``n_{i+1} > 2 n_i + 1`` first happens at this 1-based ``i``."""

    i: int

    def describe(self) -> str:
        return f"FirstViolation({self.i})"


def abundance_check(lengths: Sequence[int]) -> Abundant | FirstViolation:
    if not lengths or lengths[0] != 0:
        raise ValueError("palindromic-prefix lengths start at 0")
    if any(b <= a for a, b in zip(lengths, lengths[1:])):
        raise ValueError("palindromic-prefix lengths must increase strictly")
    for i, (n_i, n_next) in enumerate(zip(lengths, lengths[1:]), start=1):
        if n_next > 2 * n_i + 1:
            return FirstViolation(i)
    return Abundant()


# --- Density measured on words ---


def delta_from_word(
    stream: WordStream, scan_length: int, burn_in: int = 4, infinity_gap: int = 8
) -> DeltaEstimate:
    """Supremum of consecutive palindromic-prefix ratios seen in a word prefix.

    Only lengths up to half the scanned prefix are used. The word is flagged as
    having finitely many palindromic prefixes when the longest one found is
    shorter than that horizon divided by ``infinity_gap``.
    """
    if scan_length < 2:
        raise InvalidParameters("scan_length must be at least 2")
    report = palindromic_prefixes(stream.available_prefix(scan_length))
    lengths = report.trusted()
    horizon = report.safe_horizon
    if len(lengths) < 2 or lengths[-1] * infinity_gap < horizon:
        logger.info(f"No palindromic prefix beyond {lengths[-1]} within {horizon} letters")
        return DeltaEstimate(math.inf, burn_in, 0, 0.0, infinite=True)

    ratios = [b / a for a, b in zip(lengths, lengths[1:]) if a > 0]
    window = ratios[burn_in:]
    if not window:
        logger.warning(
            f"Burn-in {burn_in} leaves no ratios among {len(ratios)}; using all of them."
        )
        window = ratios
    half = len(window) // 2
    spread = abs(max(window[:half]) - max(window[half:])) if half else 0.0
    return DeltaEstimate(max(window), burn_in, len(window), spread)


# --- Periods ---


def smallest_period(w: FiniteWord) -> int:
    """Smallest period of a non-empty finite word."""
    w = FiniteWord.of(w)
    if not len(w):
        raise ValueError("the empty word has no period")
    return len(w) - int(border_table(w.array)[-1])


def looks_periodic(w: FiniteWord, fraction: float = 0.125) -> bool:
    """True when the prefix repeats a block at most ``fraction`` of its length."""
    return smallest_period(w) <= fraction * len(w)


@dataclass(frozen=True)
class PeriodicPalindromeParams:
    d: int
    r: int


@dataclass(frozen=True)
class NotApplicable:
    """``period^omega`` has only finitely many palindromic prefixes."""


def periodic_palindrome_params(period: FiniteWord) -> PeriodicPalindromeParams | NotApplicable:
    """``(d, r)`` such that a prefix of length ``n >= d`` of ``period^omega`` is a palindrome iff ``n = r mod d``."""
    period = FiniteWord.of(period)
    if not len(period):
        raise ValueError("period must be non-empty")
    p = len(period)
    k = smallest_period(period)
    d = k if p % k == 0 else p
    sample = FiniteWord((period.letters * (2 * d // p + 2))[: 2 * d])
    mask = palindromic_prefix_mask(sample.array)
    for n in range(d, 2 * d):
        if mask[n]:
            return PeriodicPalindromeParams(d, (n - 1) % d + 1)
    return NotApplicable()
