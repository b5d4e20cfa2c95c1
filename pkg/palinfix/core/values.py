# palinfix/core/values.py
"""Small value types shared across modules (psi values, profiles, delta estimates)."""

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, TypeAlias

from .words import Letter, letter_symbol

if TYPE_CHECKING:
    from .cf import QuadraticValue


@dataclass(frozen=True)
class LetterValue:
    letter: Letter

    def render(self) -> str:
        return letter_symbol(self.letter)


@dataclass(frozen=True)
class IndexValue:
    index: int

    def render(self) -> str:
        return str(self.index)


PsiValue: TypeAlias = LetterValue | IndexValue


@dataclass(frozen=True)
class ClosureStep:
    """Provenance of a palindromic-closure step appending ``letter``."""

    letter: Letter

    def render(self) -> str:
        return f"closure({letter_symbol(self.letter)})"


@dataclass(frozen=True)
class SeedStep:
    """Provenance of a prefix read off a seed word."""

    def render(self) -> str:
        return "seed"


Step: TypeAlias = LetterValue | IndexValue | ClosureStep | SeedStep


@dataclass(frozen=True)
class PalindromicProfile:
    """Lengths ``n_1 < n_2 < ...`` with ``steps[i-1]`` the rule that produced ``n_{i+1}``."""

    n: tuple[int, ...]
    steps: tuple[Step, ...] = ()

    def __len__(self) -> int:
        return len(self.n)

    def length(self, i: int) -> int:
        """1-based ``n_i``."""
        return self.n[i - 1]

    def ratios(self) -> list[Fraction]:
        """``n_{i+1}/n_i`` for every ``i`` with ``n_i > 0``."""
        return [Fraction(b, a) for a, b in zip(self.n, self.n[1:]) if a > 0]

    def rows(self) -> list[tuple[int, int, str]]:
        """CSV rows ``(i, n_i, psi_i)``; the last row has no step yet."""
        rows = []
        for i, n_i in enumerate(self.n, start=1):
            step = self.steps[i - 1].render() if i - 1 < len(self.steps) else ""
            rows.append((i, n_i, step))
        return rows

    def ratio_rows(self, digits: int = 12) -> list[tuple[int, int, str]]:
        rows = []
        for i, (a, b) in enumerate(zip(self.n, self.n[1:]), start=1):
            ratio = f"{b / a:.{digits}f}" if a > 0 else ""
            rows.append((i, a, ratio))
        return rows


@dataclass(frozen=True)
class DeltaEstimate:
    """Estimate of ``limsup n_{i+1}/n_i``.

    ``spread`` compares the suprema over the two halves of the window; it is
    a convergence diagnostic, not an error bound.
    """

    value: float
    burn_in: int
    window: int
    spread: float
    exact: "QuadraticValue | None" = None
    infinite: bool = False

    def as_dict(self) -> dict:
        return {
            "value": "inf" if self.infinite else self.value,
            "burn_in": self.burn_in,
            "window": self.window,
            "spread": self.spread,
            "exact": str(self.exact) if self.exact is not None else None,
            "infinite": self.infinite,
        }
