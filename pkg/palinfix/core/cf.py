# palinfix/core/cf.py
"""Continued fractions with exact quadratic-surd values.

``QuadraticValue`` holds ``(a + b*sqrt(d)) / c`` in canonical form; ``d == 0``
encodes rationals. Values with different radicands can be compared exactly
but not added or multiplied.
"""

import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from itertools import product
from typing import Iterable, Iterator, Sequence

from sympy import factorint

from .errors import CodecError, DomainError, NotPeriodic
from .values import DeltaEstimate

logger = logging.getLogger(__name__)


# --- Quadratic surds ---


@lru_cache(maxsize=8192)
def squarefree_decomposition(d: int) -> tuple[int, int]:
    """Returns ``(f, core)`` with ``d = f*f*core`` and ``core`` squarefree."""
    if d <= 0:
        raise DomainError(f"radicand must be positive, got {d}")
    f, core = 1, 1
    for prime, exponent in factorint(d).items():
        f *= prime ** (exponent // 2)
        if exponent % 2:
            core *= prime
    return f, core


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _sign_surd(u: int, v: int, d: int) -> int:
    """Sign of ``u + v*sqrt(d)`` for squarefree ``d`` (or ``d == 0``)."""
    if d == 0 or v == 0:
        return _sign(u)
    su, sv = _sign(u), _sign(v)
    if su == 0 or su == sv:
        return sv
    # opposite signs: the larger magnitude wins; equality is impossible for non-square d
    return su if u * u > v * v * d else sv


def _sign_mixed(p: int, q: int, d1: int, r: int, d2: int) -> int:
    """Sign of ``p + q*sqrt(d1) + r*sqrt(d2)`` for distinct squarefree ``d1, d2``."""
    sx = _sign_surd(p, q, d1)
    sy = _sign(r)
    if sx == 0 or sy == 0 or sx == sy:
        return sx or sy
    # |X| vs |Y| through X^2 - Y^2 = p^2 + q^2 d1 - r^2 d2 + 2pq sqrt(d1)
    s = _sign_surd(p * p + q * q * d1 - r * r * d2, 2 * p * q, d1)
    if s > 0:
        return sx
    if s < 0:
        return sy
    return 0


@total_ordering
@dataclass(frozen=True, eq=False)
class QuadraticValue:
    """Exact ``(a + b*sqrt(d)) / c`` with ``d`` squarefree, ``c > 0`` and gcd-reduced."""

    a: int
    b: int = 0
    c: int = 1
    d: int = 0

    def __post_init__(self):
        a, b, c, d = int(self.a), int(self.b), int(self.c), int(self.d)
        if c == 0:
            raise ZeroDivisionError("QuadraticValue with zero denominator")
        if d < 0:
            raise DomainError("negative radicands are not supported")
        if b != 0 and d > 0:
            f, d = squarefree_decomposition(d)
            b *= f
            if d == 1:
                a, b, d = a + b, 0, 0
        if b == 0 or d == 0:
            b, d = 0, 0
        if c < 0:
            a, b, c = -a, -b, -c
        g = math.gcd(a, b, c)
        if a == 0 and b == 0:
            c = 1
        elif g > 1:
            a, b, c = a // g, b // g, c // g
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @classmethod
    def coerce(cls, value: "QuadraticValue | Fraction | int") -> "QuadraticValue":
        if isinstance(value, QuadraticValue):
            return value
        if isinstance(value, bool):
            raise TypeError("booleans are not quadratic values")
        if isinstance(value, int):
            return cls(value)
        if isinstance(value, Fraction):
            return cls(value.numerator, 0, value.denominator)
        raise TypeError(f"cannot convert {type(value).__name__} to QuadraticValue")

    @classmethod
    def parse(cls, text: str) -> "QuadraticValue":
        """Parses ``"3/2"``, ``"1.7072"``, ``"sqrt(3)"`` or ``"(7+sqrt(13))/6"``."""
        s = text.replace(" ", "").replace("√", "sqrt")
        if "sqrt" not in s:
            try:
                return cls.coerce(Fraction(s))
            except (ValueError, ZeroDivisionError) as e:
                raise CodecError(f"not a number: {text!r}") from e
        m = re.fullmatch(
            r"\(?(?P<a>[+-]?\d+)?(?P<b>[+-]?\d*)\*?sqrt\((?P<d>\d+)\)\)?(?:/(?P<c>\d+))?", s
        )
        if not m:
            raise CodecError(f"not a quadratic surd: {text!r}")
        a_text, b_text = m.group("a"), m.group("b")
        if a_text is not None and b_text == "":
            # "2*sqrt(3)": the only integer is the coefficient
            a_text, b_text = None, a_text
        a = int(a_text) if a_text else 0
        if b_text in ("", "+"):
            b = 1
        elif b_text == "-":
            b = -1
        else:
            b = int(b_text)
        c = int(m.group("c")) if m.group("c") else 1
        return cls(a, b, c, int(m.group("d")))

    # --- predicates and conversions ---

    @property
    def is_rational(self) -> bool:
        return self.d == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise DomainError(f"{self} is irrational")
        return Fraction(self.a, self.c)

    def sign(self) -> int:
        return _sign_surd(self.a, self.b, self.d)

    def conjugate(self) -> "QuadraticValue":
        return QuadraticValue(self.a, -self.b, self.c, self.d)

    def __float__(self) -> float:
        return float(Fraction(self.a, self.c)) + float(Fraction(self.b, self.c)) * math.sqrt(self.d)

    def floor(self) -> int:
        """Exact floor."""
        if self.d == 0:
            return self.a // self.c
        root = math.isqrt(self.b * self.b * self.d)
        # b*sqrt(d) is irrational, so its floor is isqrt for b > 0 and -isqrt-1 for b < 0
        s = self.a + (root if self.b > 0 else -root - 1)
        return s // self.c

    def decimal(self, digits: int = 6) -> str:
        """Truncated decimal expansion with ``digits`` places (exact)."""
        if self.sign() < 0:
            return "-" + (-self).decimal(digits)
        scale = 10**digits
        q = (self * scale).floor()
        if digits == 0:
            return str(q)
        return f"{q // scale}.{q % scale:0{digits}d}"

    def __str__(self) -> str:
        if self.d == 0:
            return str(self.a) if self.c == 1 else f"{self.a}/{self.c}"
        if self.b == 1:
            surd = f"sqrt({self.d})"
        elif self.b == -1:
            surd = f"-sqrt({self.d})"
        else:
            surd = f"{self.b}*sqrt({self.d})"
        if self.a:
            body = f"{self.a}{surd}" if surd.startswith("-") else f"{self.a}+{surd}"
            return f"({body})/{self.c}" if self.c != 1 else body
        return f"{surd}/{self.c}" if self.c != 1 else surd

    def __repr__(self) -> str:
        return f"QuadraticValue({str(self)!r})"

    # --- arithmetic ---

    def _radicand(self, other: "QuadraticValue") -> int:
        if self.d == 0:
            return other.d
        if other.d == 0 or other.d == self.d:
            return self.d
        raise DomainError(f"mixed radicands sqrt({self.d}) and sqrt({other.d})")

    def __neg__(self) -> "QuadraticValue":
        return QuadraticValue(-self.a, -self.b, self.c, self.d)

    def __add__(self, other) -> "QuadraticValue":
        try:
            other = QuadraticValue.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._radicand(other)
        return QuadraticValue(
            self.a * other.c + other.a * self.c,
            self.b * other.c + other.b * self.c,
            self.c * other.c,
            d,
        )

    __radd__ = __add__

    def __sub__(self, other) -> "QuadraticValue":
        try:
            other = QuadraticValue.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "QuadraticValue":
        return (-self) + other

    def __mul__(self, other) -> "QuadraticValue":
        try:
            other = QuadraticValue.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._radicand(other)
        return QuadraticValue(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            self.c * other.c,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticValue":
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadraticValue(self.c * self.a, -self.c * self.b, norm, self.d)

    def __truediv__(self, other) -> "QuadraticValue":
        try:
            other = QuadraticValue.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "QuadraticValue":
        return QuadraticValue.coerce(other) * self.inverse()

    # --- comparison ---

    def compare(self, other) -> int:
        """Exact sign of ``self - other``, radicands may differ."""
        other = QuadraticValue.coerce(other)
        if self.d == 0 or other.d == 0 or self.d == other.d:
            return (self - other).sign()
        # clear denominators: (a1 c2 - a2 c1) + b1 c2 sqrt(d1) - b2 c1 sqrt(d2)
        return _sign_mixed(
            self.a * other.c - other.a * self.c,
            self.b * other.c,
            self.d,
            -other.b * self.c,
            other.d,
        )

    def __eq__(self, other) -> bool:
        try:
            other = QuadraticValue.coerce(other)
        except TypeError:
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)

    def __lt__(self, other) -> bool:
        try:
            return self.compare(other) < 0
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self.d == 0:
            return hash(Fraction(self.a, self.c))
        return hash((self.a, self.b, self.c, self.d))


def sqrt(d: int) -> QuadraticValue:
    return QuadraticValue(0, 1, 1, d)


# --- Spectrum constants ---

GAMMA = QuadraticValue(1, 1, 2, 5)
SQRT3 = sqrt(3)
SIGMA_0 = QuadraticValue(1)
SIGMA_1 = GAMMA
SIGMA_2 = QuadraticValue(2, 1, 2, 2)
SIGMA_3 = QuadraticValue(2, 1, 3, 10)
SIGMA_INFINITY = 1.721  # only three decimals are published
GAP_UPPER = QuadraticValue(7, 1, 6, 13)
FIBONACCI_RECURRENCE_QUOTIENT = QuadraticValue(5, 1, 2, 5)


# --- Integer sequences ---


@dataclass(frozen=True)
class IntSequence:
    """Eventually periodic positive integer sequence ``s_1, s_2, ...``."""

    preperiod: tuple[int, ...] = ()
    period: tuple[int, ...] = (1,)

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(int(x) for x in self.preperiod))
        object.__setattr__(self, "period", tuple(int(x) for x in self.period))
        if not self.period:
            raise ValueError("IntSequence needs a non-empty period")
        if any(x < 1 for x in self.preperiod + self.period):
            raise ValueError(f"entries must be positive: {self.preperiod}{self.period}")

    @classmethod
    def parse(cls, text: str) -> "IntSequence":
        """``"2,1"`` is the period; ``"3;2,1"`` has preperiod 3."""
        try:
            if ";" in text:
                head, _, body = text.partition(";")
                pre = tuple(int(x) for x in head.split(",") if x.strip())
            else:
                pre, body = (), text
            return cls(pre, tuple(int(x) for x in body.split(",") if x.strip()))
        except ValueError as e:
            raise CodecError(f"bad integer sequence {text!r}: {e}") from e

    def term(self, k: int) -> int:
        """1-based ``s_k``."""
        q = len(self.preperiod)
        if k <= q:
            return self.preperiod[k - 1]
        return self.period[(k - q - 1) % len(self.period)]

    def terms(self, count: int) -> list[int]:
        return [self.term(k) for k in range(1, count + 1)]

    def canonical(self) -> "IntSequence":
        """Primitive period, with matching preperiod letters rotated into the period."""
        period = self.period
        p = len(period)
        for size in range(1, p + 1):
            if p % size == 0 and period == period[:size] * (p // size):
                period = period[:size]
                break
        pre = self.preperiod
        while pre and pre[-1] == period[-1]:
            period = (period[-1],) + period[:-1]
            pre = pre[:-1]
        return IntSequence(pre, period)

    def shifted(self, k: int) -> "IntSequence":
        """``T^k s``: drop the first ``k`` terms."""
        q = len(self.preperiod)
        if k <= q:
            return IntSequence(self.preperiod[k:], self.period)
        j = (k - q) % len(self.period)
        return IntSequence((), self.period[j:] + self.period[:j])

    def render(self) -> str:
        body = ",".join(str(x) for x in self.period)
        if self.preperiod:
            return ",".join(str(x) for x in self.preperiod) + ";" + body
        return body


# --- Continued fractions ---


@dataclass(frozen=True)
class ContinuedFraction:
    """``[a0; a1, ..., (p1, ..., pk)]`` with the parenthesised block repeating."""

    head: tuple[int, ...] = ()
    period: tuple[int, ...] = ()

    def __post_init__(self):
        head = tuple(int(x) for x in self.head)
        period = tuple(int(x) for x in self.period)
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "period", period)
        entries = head + period
        if not entries:
            raise ValueError("a continued fraction needs at least one partial quotient")
        if entries[0] < 0 or any(x < 1 for x in entries[1:]):
            raise ValueError(f"invalid partial quotients {entries}")
        if period and period[0] == 0 and not head:
            raise ValueError("a repeating block cannot contain 0")

    @classmethod
    def parse(cls, text: str) -> "ContinuedFraction":
        body = text.strip()
        if body.startswith("[") and body.endswith("]"):
            body = body[1:-1]
        period: tuple[int, ...] = ()
        m = re.search(r"\(([^)]*)\)\s*$", body)
        try:
            if m:
                period = tuple(int(x) for x in m.group(1).split(",") if x.strip())
                body = body[: m.start()]
            head = tuple(int(x) for x in re.split(r"[;,]", body) if x.strip())
            return cls(head, period)
        except ValueError as e:
            raise CodecError(f"bad continued fraction {text!r}: {e}") from e

    def __str__(self) -> str:
        parts = [str(x) for x in self.head]
        if self.period:
            parts.append("(" + ", ".join(str(x) for x in self.period) + ")")
        if len(parts) == 1:
            return f"[{parts[0]}]"
        return f"[{parts[0]}; " + ", ".join(parts[1:]) + "]"

    def terms(self) -> Iterator[int]:
        yield from self.head
        while self.period:
            yield from self.period


def _continuant(entries: Iterable[int]) -> tuple[int, int, int, int]:
    """Product of the matrices ``[[a, 1], [1, 0]]`` as ``(A, B, C, D)``."""
    A, B, C, D = 1, 0, 0, 1
    for a in entries:
        A, B, C, D = A * a + B, A, C * a + D, C
    return A, B, C, D


def cf_convergent(cf: ContinuedFraction, depth: int) -> Fraction:
    """Exact value of the first ``depth`` partial quotients."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    entries = []
    for a in cf.terms():
        entries.append(a)
        if len(entries) == depth:
            break
    A, _, C, _ = _continuant(entries)
    return Fraction(A, C)


def cf_exact(cf: ContinuedFraction) -> QuadraticValue:
    """Exact value of an eventually periodic continued fraction."""
    if not cf.period:
        raise NotPeriodic(f"{cf} has no repeating block")
    A, B, C, D = _continuant(cf.period)
    # x = (Ax + B)/(Cx + D)  <=>  C x^2 + (D - A) x - B = 0, positive root
    tail = QuadraticValue(A - D, 1, 2 * C, (A - D) ** 2 + 4 * B * C)
    P, Q, R, S = _continuant(cf.head)
    return (tail * P + Q) / (tail * R + S)


def finite_value(entries: Sequence[int]) -> Fraction:
    A, _, C, _ = _continuant(entries)
    return Fraction(A, C)


# --- Sturmian delta and recurrence quotient ---


def _reversed_rotations(period: Sequence[int]) -> list[tuple[int, ...]]:
    rev = tuple(period[::-1])
    return [rev[r:] + rev[:r] for r in range(len(rev))]


def sturmian_delta(s: IntSequence) -> DeltaEstimate:
    """Exact ``limsup [1, 1, s_k, ..., s_1]`` for an eventually periodic ``s``."""
    best = max(
        cf_exact(ContinuedFraction((1, 1), rotation))
        for rotation in _reversed_rotations(s.period)
    )
    return DeltaEstimate(
        value=float(best),
        burn_in=len(s.preperiod),
        window=len(s.period),
        spread=0.0,
        exact=best,
    )


def sturmian_delta_numeric(terms: Sequence[int], burn_in: int = 0) -> DeltaEstimate:
    """Windowed suprema of the finite values ``[1, 1, s_k, ..., s_1]`` for ``k > burn_in``."""
    if len(terms) <= burn_in:
        raise ValueError("need more terms than the burn-in")
    values = [
        float(finite_value((1, 1) + tuple(reversed(terms[:k]))))
        for k in range(burn_in + 1, len(terms) + 1)
    ]
    half = len(values) // 2
    spread = abs(max(values[:half]) - max(values[half:])) if half else 0.0
    return DeltaEstimate(value=max(values), burn_in=burn_in, window=len(values), spread=spread)


def recurrence_quotient(s: IntSequence) -> QuadraticValue:
    """Recurrence quotient of the characteristic word with slope ``[0; s_1, s_2, ...]``."""
    return 2 + max(cf_exact(ContinuedFraction((), rotation)) for rotation in _reversed_rotations(s.period))


def delta_from_recurrence_quotient(rho):
    """``(2 rho - 3) / (rho - 1)``; returns the same kind (Fraction or QuadraticValue)."""
    if isinstance(rho, QuadraticValue):
        if rho.compare(1) <= 0:
            raise DomainError(f"recurrence quotient must exceed 1, got {rho}")
        return (rho * 2 - 3) / (rho - 1)
    rho = Fraction(rho)
    if rho <= 1:
        raise DomainError(f"recurrence quotient must exceed 1, got {rho}")
    return (2 * rho - 3) / (rho - 1)


# --- Cassaigne's condition and the spectrum scan ---


def _cf_of(b: IntSequence) -> ContinuedFraction:
    return ContinuedFraction(b.preperiod, b.period)


def cassaigne_condition(b: IntSequence) -> bool:
    """``[b] >= [T^k b]`` for every shift ``k``."""
    entries = b.preperiod + b.period
    if max(entries) > entries[0]:
        # a larger later entry gives a larger shifted value
        return False
    value = cf_exact(_cf_of(b))
    for k in range(1, len(entries)):
        if entries[k] < entries[0]:
            continue
        if cf_exact(_cf_of(b.shifted(k))).compare(value) > 0:
            return False
    return True


@dataclass(frozen=True)
class ScanHit:
    b: IntSequence
    value: QuadraticValue

    def row(self) -> tuple[str, str, str]:
        return (self.b.render(), str(self.value), self.value.decimal(10))


def _candidates(max_entry: int, max_period: int, max_preperiod: int) -> Iterator[IntSequence]:
    seen: set[IntSequence] = set()
    alphabet = range(1, max_entry + 1)
    for q in range(max_preperiod + 1):
        for p in range(1, max_period + 1):
            for pre in product(alphabet, repeat=q):
                for per in product(alphabet, repeat=p):
                    first = pre[0] if pre else per[0]
                    if max(pre + per) > first:
                        continue
                    b = IntSequence(pre, per).canonical()
                    if b in seen:
                        continue
                    seen.add(b)
                    yield b


def spectrum_scan(
    max_entry: int,
    max_period: int,
    max_preperiod: int,
    interval: tuple[QuadraticValue, QuadraticValue],
    inclusive: bool = False,
) -> list[ScanHit]:
    """Cassaigne-admissible ``b`` whose value ``[1, 1, b]`` lies in the interval."""
    if min(max_entry, max_period) < 1 or max_preperiod < 0:
        raise ValueError("scan bounds must be positive")
    lo, hi = (QuadraticValue.coerce(x) for x in interval)
    hits = []
    examined = 0
    for b in _candidates(max_entry, max_period, max_preperiod):
        examined += 1
        if not cassaigne_condition(b):
            continue
        value = cf_exact(ContinuedFraction((1, 1) + b.preperiod, b.period))
        low, high = value.compare(lo), value.compare(hi)
        if (low > 0 and high < 0) or (inclusive and low >= 0 and high <= 0):
            hits.append(ScanHit(b, value))
    logger.debug(f"Spectrum scan examined {examined} canonical candidates, {len(hits)} hits")
    hits.sort(key=lambda hit: (hit.value, hit.b.render()))
    return hits
