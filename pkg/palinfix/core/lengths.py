# palinfix/core/lengths.py
"""Length recurrences of directive functions and the density estimates built on them."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cf import IntSequence, QuadraticValue, sturmian_delta
from .errors import DegenerateSequence, InvalidParameters, NonIncreasing, NotReduced
from .psi import (
    DirectiveFunctionSpec,
    ExplicitTail,
    ViolationAt,
    asymptotic_sturmian_gaps,
    is_reduced,
    periodic_regime,
    psi_values,
    t_family,
)
from .values import DeltaEstimate, IndexValue, LetterValue, PalindromicProfile, SeedStep

logger = logging.getLogger(__name__)


def _next_length(lengths: Sequence[int], i: int, value) -> int:
    """``n_{i+1}`` from ``n_1..n_i`` and ``psi(i)``."""
    n_i = lengths[i - 1]
    if isinstance(value, LetterValue):
        return 2 * n_i + 1
    return 2 * n_i - lengths[value.index - 1]


def length_sequence(spec: DirectiveFunctionSpec, count: int) -> PalindromicProfile:
    """``n_1 = 0, ..., n_count`` under the two-case recurrence."""
    if count < 1:
        raise InvalidParameters("count must be positive")
    values = psi_values(spec, count - 1) if count > 1 else []
    n = [0]
    for i, value in enumerate(values, start=1):
        n.append(_next_length(n, i, value))
    return PalindromicProfile(tuple(n), tuple(values))


def alt_length_sequence(
    spec: DirectiveFunctionSpec, initial: Sequence[int], count: int
) -> PalindromicProfile:
    """Same recurrence, started from arbitrary increasing initial values."""
    initial = [int(x) for x in initial]
    if not initial or initial[0] < 0:
        raise InvalidParameters("initial values must be non-empty and non-negative")
    for i in range(1, len(initial)):
        if initial[i] <= initial[i - 1]:
            raise NonIncreasing(i, initial[i - 1], initial[i])
    n = initial[:count]
    values = psi_values(spec, count - 1) if count > len(initial) else []
    for i in range(len(n), count):
        value = values[i - 1]
        following = _next_length(n, i, value)
        if following <= n[i - 1]:
            raise NonIncreasing(i, n[i - 1], following)
        n.append(following)
    steps = [SeedStep()] * (min(len(initial), count) - 1) + values[len(initial) - 1 : count - 1]
    return PalindromicProfile(tuple(n), tuple(steps))


def exact_delta(spec: DirectiveFunctionSpec) -> QuadraticValue | None:
    """Exact density when the tail behaves like a Sturmian scheme, else None."""
    gaps = asymptotic_sturmian_gaps(spec)
    if gaps is None:
        return None
    return sturmian_delta(IntSequence((), gaps)).exact


def delta_estimate(spec: DirectiveFunctionSpec, burn_in: int = 64, window: int = 256) -> DeltaEstimate:
    """``max n_{i+1}/n_i`` over ``burn_in < i - m <= burn_in + window``."""
    if burn_in < 0 or window < 1 or burn_in + window < 2:
        raise InvalidParameters("need burn_in >= 0, window >= 1 and burn_in + window >= 2")
    m = spec.table_length
    first = max(m + burn_in + 1, 2)
    last = m + burn_in + window
    n = length_sequence(spec, last + 1).n
    if any(x == 0 for x in n[1:]):
        raise DegenerateSequence("zero palindromic-prefix length past n_1")
    ratios = [n[i] / n[i - 1] for i in range(first, last + 1)]
    half = len(ratios) // 2
    spread = abs(max(ratios[:half]) - max(ratios[half:])) if half else 0.0
    return DeltaEstimate(
        value=max(ratios),
        burn_in=burn_in,
        window=len(ratios),
        spread=spread,
        exact=exact_delta(spec),
    )


# --- Appendix diagnostics ---


@dataclass
class AppendixReport:
    count: int
    jump_growth: list[tuple[int, bool]] = field(default_factory=list)
    bound: int | None = None
    ceiling: Fraction | None = None
    delta: float = 0.0
    bound_failures: list[int] = field(default_factory=list)
    alpha: list[Fraction] = field(default_factory=list)
    widths: dict[int, Fraction] = field(default_factory=dict)
    contraction_start: int | None = None
    contraction_failures: list[int] = field(default_factory=list)
    contraction_ratio: float | None = None

    @property
    def jump_growth_holds(self) -> bool:
        return all(ok for _, ok in self.jump_growth)

    @property
    def bound_holds(self) -> bool | None:
        if self.ceiling is None:
            return None
        return not self.bound_failures

    @property
    def contraction_holds(self) -> bool | None:
        if self.contraction_start is None:
            return None
        return not self.contraction_failures

    @property
    def widths_monotone(self) -> bool:
        ordered = [self.widths[i] for i in sorted(self.widths)]
        return all(b <= a for a, b in zip(ordered, ordered[1:]))

    def as_dict(self) -> dict:
        return {
            "count": self.count,
            "jump_growth_holds": self.jump_growth_holds,
            "jump_growth_checked": [t for t, _ in self.jump_growth],
            "jump_growth_failures": [t for t, ok in self.jump_growth if not ok],
            "back_reference_bound": self.bound,
            "delta_ceiling": float(self.ceiling) if self.ceiling is not None else None,
            "delta_estimate": self.delta,
            "bound_holds": self.bound_holds,
            "contraction_start": self.contraction_start,
            "contraction_holds": self.contraction_holds,
            "contraction_ratio": self.contraction_ratio,
            "widths_monotone": self.widths_monotone,
            "alpha_last": float(self.alpha[-1]) if self.alpha else None,
        }

    def trace_rows(self) -> list[tuple[int, str, str]]:
        """CSV rows ``(i, alpha_i, hull width)`` for plotting."""
        rows = []
        for i, alpha in enumerate(self.alpha, start=1):
            width = self.widths.get(i)
            rows.append((i, f"{float(alpha):.15g}", "" if width is None else f"{float(width):.15g}"))
        return rows


def _tail_bound(spec: DirectiveFunctionSpec, count: int) -> tuple[int | None, int]:
    """``(B, start)``: back-reference bound of the letter-free tail and where it starts."""
    regime = periodic_regime(spec)
    if regime is not None:
        return regime.bound, regime.start
    values = psi_values(spec, min(count, spec.table_length))
    start = max(2, len(values) // 2)
    tail = values[start - 1 :]
    if not tail or any(isinstance(v, LetterValue) for v in tail):
        return None, start
    return max(i - v.index for i, v in enumerate(tail, start=start)), start


def appendix_diagnostics(
    spec: DirectiveFunctionSpec, count: int, companion: Sequence[int] = (0, 2)
) -> AppendixReport:
    """Checks the appendix inequalities along the first ``count`` lengths."""
    if count < 4:
        raise InvalidParameters("diagnostics need at least 4 terms")
    status = is_reduced(spec, count)
    if isinstance(status, ViolationAt):
        raise NotReduced(status.describe())
    if isinstance(spec.tail, ExplicitTail):
        count = min(count, spec.table_length + 1)

    profile = length_sequence(spec, count)
    n = profile.n
    values = profile.steps
    report = AppendixReport(count=count)

    # 1. n_{t+1} > n_t + n_{t-1} at every jump index t >= 2
    for t in t_family(spec, count - 1).indices:
        if t >= 2:
            report.jump_growth.append((t, n[t] > n[t - 1] + n[t - 2]))

    # 2. Back-reference bound and the density ceiling it implies
    bound, start = _tail_bound(spec, count)
    ratios = [n[i] / n[i - 1] for i in range(max(2, count // 2), count)]
    report.delta = max(ratios) if ratios else 0.0
    if bound is None:
        logger.info("Tail contains letters or is unbounded; no density ceiling.")
        return report
    report.bound = bound
    report.ceiling = 2 - Fraction(1, 3**bound)
    scale = 3**bound
    for i in range(start, count):
        value = values[i - 1]
        if isinstance(value, IndexValue) and value.index >= 2:
            if n[i] * scale > (2 * scale - 1) * n[i - 1]:
                report.bound_failures.append(i)

    # 3. alpha_i = eps_i / eps'_i for a companion sequence
    other = alt_length_sequence(spec, companion, count).n
    report.alpha = [
        Fraction(n[i] - n[i - 1], other[i] - other[i - 1]) for i in range(1, count)
    ]
    i0 = max(start, len(companion)) + bound
    last = len(report.alpha)
    if i0 + bound > last:
        logger.info(f"Too few terms for the contraction check (need {i0 + bound}, have {last}).")
        return report
    report.contraction_start = i0

    def hull(i: int) -> tuple[Fraction, Fraction]:
        window = report.alpha[i - bound : i]
        return min(window), max(window)

    factor = 1 - Fraction(1, bound**bound)
    worst = 0.0
    for i in range(i0, last + 1):
        lo, hi = hull(i)
        report.widths[i] = hi - lo
    for i in range(i0, last - bound + 1):
        lo, hi = hull(i)
        later_lo, later_hi = hull(i + bound)
        width, later = hi - lo, later_hi - later_lo
        if later_lo < lo or later_hi > hi or later > factor * width:
            report.contraction_failures.append(i)
        if width > 0:
            worst = max(worst, float(later / width))
    report.contraction_ratio = worst
    return report
