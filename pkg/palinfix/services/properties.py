# palinfix/services/properties.py
"""Single randomised cases for the verification suites.

Each ``*_case`` function draws its own input from the ``random.Random`` it
is given and returns a ``CaseOutcome``; nothing here touches files or
threads.
"""

import logging
import random
from dataclasses import dataclass

from ..core.cf import GAP_UPPER, SQRT3, IntSequence, spectrum_scan
from ..core.generators import (
    episturmian_word,
    sturmian_directive,
    sturmian_psi,
    sturmian_standard_sequence,
    sturmian_word,
    word_from_psi,
)
from ..core.lengths import alt_length_sequence, appendix_diagnostics, delta_estimate, length_sequence
from ..core.oracle import (
    PeriodicPalindromeParams,
    looks_periodic,
    palindromic_prefix_lengths_fast,
    palindromic_prefixes,
    periodic_palindrome_params,
    smallest_period,
)
from ..core.psi import (
    DirectiveFunctionSpec,
    periodic_regime,
    psi_values,
    recover_psi,
    t_family,
)
from ..core.values import IndexValue
from ..core.words import FiniteWord, is_palindrome, mirror, palindromic_closure
from . import sampler

logger = logging.getLogger(__name__)

# --- Sizes ---
WORDS_PER_CASE = 50
CONSTRUCTION_LENGTH = 4000
PERIODICITY_LENGTH = 16384
PERIODICITY_FRACTION = 1 / 32
ROUTE_LENGTH = 2000
INITIAL_VALUE_TERMS = 300
INITIAL_VALUE_TAIL = 50
INITIAL_VALUE_CEILING = 1.95
STURMIAN_TAIL_HORIZON = 500
STURMIAN_TAIL_CEILING = 1.70
DIAGNOSTIC_TERMS = 200


@dataclass(frozen=True)
class CaseOutcome:
    ok: bool
    detail: str = ""
    spec: DirectiveFunctionSpec | None = None
    prefix: FiniteWord | None = None
    index: int | None = None
    skipped: bool = False


def _failure(detail: str, **context) -> CaseOutcome:
    return CaseOutcome(False, detail, **context)


# --- Prefix properties of small words ---


def random_small_word(rng: random.Random, max_length: int = 12) -> FiniteWord:
    """Either a uniformly random word or a few closure steps plus noise."""
    alphabet = rng.randint(1, 3)
    if rng.random() < 0.5:
        return FiniteWord(tuple(rng.randrange(alphabet) for _ in range(rng.randint(1, max_length))))
    word = FiniteWord(())
    for _ in range(rng.randint(1, 5)):
        word = palindromic_closure(word + FiniteWord((rng.randrange(alphabet),)))
    noise = tuple(rng.randrange(alphabet) for _ in range(rng.randint(0, 3)))
    return word + FiniteWord(noise)


def _random_palindrome(rng: random.Random, alphabet: int) -> FiniteWord:
    letters = tuple(rng.randrange(alphabet) for _ in range(rng.randint(0, 4)))
    return palindromic_closure(FiniteWord(letters))


def _power_extension(rng: random.Random) -> str | None:
    """``p`` and ``pu`` palindromes make every ``p u^n`` and ``u~^n p`` palindromes."""
    alphabet = rng.randint(1, 3)
    p = _random_palindrome(rng, alphabet)
    extra = FiniteWord(tuple(rng.randrange(alphabet) for _ in range(rng.randint(1, 3))))
    u = palindromic_closure(p + extra)[len(p):]
    for n in range(2, 5):
        if not is_palindrome(p + u * n):
            return f"p u^{n} not a palindrome for p={p}, u={u}"
    for n in range(0, 5):
        if not is_palindrome(mirror(u) * n + p):
            return f"u~^{n} p not a palindrome for p={p}, u={u}"
    return None


def _overlap_rules(word: FiniteWord) -> str | None:
    letters = word.letters
    lengths = palindromic_prefix_lengths_fast(word)
    # three palindromic prefixes n' <= n'' <= n + n'
    for n in lengths:
        for n1 in lengths:
            for n2 in lengths:
                if not n1 <= n2 <= n + n1:
                    continue
                cut = n + n1 - n2
                if letters[:n2] != letters[:n1] + letters[cut:n]:
                    return f"factorisation fails for ({n}, {n1}, {n2}) in {word}"
                if n2 >= n - n1 and not is_palindrome(word[:cut]):
                    return f"prefix of length {cut} not a palindrome for ({n}, {n1}, {n2}) in {word}"
    # consecutive n' < n'': palindromic prefixes up to n' + n'' are pi' omega^t
    for n1, n2 in zip(lengths, lengths[1:]):
        omega = letters[n1:n2]
        for m in lengths:
            if not n1 <= m <= n1 + n2:
                continue
            t, rest = divmod(m - n1, len(omega))
            if rest or letters[:m] != letters[:n1] + omega * t:
                return f"length {m} is not {n1} + k*{len(omega)} in {word}"
    # three consecutive lengths
    for n0, n1, n2 in zip(lengths, lengths[1:], lengths[2:]):
        if n2 <= n0 + n1 and letters[:n2] != letters[:n1] + letters[n0:n1]:
            return f"pi_2 != pi_1 pi_0^-1 pi_1 for ({n0}, {n1}, {n2}) in {word}"
    return None


def _periodic_palindromes(rng: random.Random) -> str | None:
    """``(PQ)^omega`` has palindromic prefixes in one class mod its smallest period."""
    alphabet = rng.randint(1, 3)
    v = FiniteWord(())
    while not len(v):
        v = _random_palindrome(rng, alphabet) + _random_palindrome(rng, alphabet)
    params = periodic_palindrome_params(v)
    if not isinstance(params, PeriodicPalindromeParams):
        return f"no palindromic class found for ({v})^omega"
    sample = v * (4 * params.d // len(v) + 4)
    d, r = params.d, params.r
    if smallest_period(sample) != d:
        return f"smallest period of ({v})^omega is not {d}"
    lengths = set(palindromic_prefix_lengths_fast(sample))
    for n in range(d, len(sample) + 1):
        if (n in lengths) != ((n - r) % d == 0):
            return f"prefix {n} of ({v})^omega breaks the class {r} mod {d}"
    period = sample[:d]
    if not any(is_palindrome(period[:j]) and is_palindrome(period[j:]) for j in range(d + 1)):
        return f"period {period} is not a product of two palindromes"
    return None


def _random_word(rng: random.Random, alphabet: int, longest: int) -> FiniteWord:
    return FiniteWord(tuple(rng.randrange(alphabet) for _ in range(rng.randint(1, longest))))


def _preperiodic_palindromes(rng: random.Random) -> str | None:
    """``u v^omega`` has a palindromic prefix of length ``2|u| + d`` or more only if it is purely periodic."""
    alphabet = rng.randint(1, 3)
    u, v = _random_word(rng, alphabet, 6), _random_word(rng, alphabet, 6)
    d = smallest_period(v * 3)
    sample = u + v * (8 * (len(u) + d) // len(v) + 2)
    if all(sample[i] == sample[i + d] for i in range(len(u))):
        return None
    longest = palindromic_prefix_lengths_fast(sample)[-1]
    if longest >= 2 * len(u) + d:
        return f"({u})({v})^omega is not purely periodic but has a palindromic prefix of length {longest}"
    return None


def prefix_properties_case(rng: random.Random) -> CaseOutcome:
    for _ in range(WORDS_PER_CASE):
        word = random_small_word(rng)
        problem = (
            _power_extension(rng)
            or _overlap_rules(word)
            or _periodic_palindromes(rng)
            or _preperiodic_palindromes(rng)
        )
        if problem:
            return _failure(problem, prefix=word)
    return CaseOutcome(True)


# --- Reduced iff the construction is exact ---


def _periodicity_problem(spec: DirectiveFunctionSpec, word: FiniteWord) -> str | None:
    """Periodic words come exactly from tails that settle on ``psi(i) = i - 1``."""
    regime = periodic_regime(spec)
    if looks_periodic(word, PERIODICITY_FRACTION) != regime.finite_t_family:
        return f"periodicity {not regime.finite_t_family} expected, smallest period {smallest_period(word)}"
    return None


def reduced_exactness_case(rng: random.Random) -> CaseOutcome:
    spec = sampler.random_reduced_spec(rng)
    generated = word_from_psi(spec, PERIODICITY_LENGTH)
    word = generated.stream.available_prefix(PERIODICITY_LENGTH)
    report = palindromic_prefixes(word)
    expected = tuple(n for n in generated.profile.n if n <= report.safe_horizon)
    found = report.trusted()
    if found != expected:
        extra = sorted(set(found) ^ set(expected))
        return _failure(
            f"palindromic prefixes differ from the construction at lengths {extra[:5]}",
            spec=spec, prefix=word, index=extra[0] if extra else None,
        )
    problem = _periodicity_problem(spec, word)
    if problem:
        return _failure(problem, spec=spec, prefix=word)
    return CaseOutcome(True)


def non_reduced_case(rng: random.Random) -> CaseOutcome:
    spec, violation = sampler.random_non_reduced_spec(rng)
    lengths = length_sequence(spec, violation.index + 2).n
    horizon = 2 * lengths[-1] + 2
    generated = word_from_psi(spec, horizon)
    word = generated.stream.available_prefix(horizon)
    extra = set(palindromic_prefixes(word).trusted()) - set(generated.profile.n)
    if not extra:
        return _failure(
            f"{violation.describe()} but no extra palindromic prefix within {horizon} letters",
            spec=spec, prefix=word, index=violation.index,
        )
    return CaseOutcome(True, detail=f"extra prefix {min(extra)}")


def reduced_or_not_case(rng: random.Random, index: int) -> CaseOutcome:
    """Two reduced cases for every non-reduced one."""
    return non_reduced_case(rng) if index % 3 == 2 else reduced_exactness_case(rng)


# --- Recovery ---


def recovery_case(rng: random.Random) -> CaseOutcome:
    spec = sampler.random_reduced_spec(rng)
    generated = word_from_psi(spec, CONSTRUCTION_LENGTH)
    recovered, _ = recover_psi(generated.stream, CONSTRUCTION_LENGTH)
    expected = tuple(psi_values(spec, recovered.table_length))
    if not recovered.table or recovered.table != expected:
        first = next(
            (i for i, (a, b) in enumerate(zip(recovered.table, expected), start=1) if a != b), None
        )
        return _failure(
            "recovered psi differs from the generating spec",
            spec=spec, prefix=generated.stream.available_prefix(CONSTRUCTION_LENGTH), index=first,
        )
    return CaseOutcome(True, detail=f"recovered psi(1..{recovered.table_length})")


# --- Initial values do not matter ---


def _spec_with_delta_below(rng: random.Random, draw, ceiling: float, burn_in: int, window: int):
    for _ in range(sampler.RETRIES):
        spec = draw(rng)
        regime = periodic_regime(spec)
        if regime is None or regime.finite_t_family:
            continue
        estimate = delta_estimate(spec, burn_in, window)
        if estimate.value < ceiling:
            return spec, estimate
    return None, None


def initial_values_case(rng: random.Random, tolerance: float = 1e-6) -> CaseOutcome:
    spec, _ = _spec_with_delta_below(rng, sampler.random_reduced_spec, INITIAL_VALUE_CEILING, 64, 256)
    if spec is None:
        return CaseOutcome(True, detail="no spec below the ceiling", skipped=True)
    n = length_sequence(spec, INITIAL_VALUE_TERMS).n
    initial = sorted(rng.sample(range(0, 40), rng.randint(2, 5)))
    other = alt_length_sequence(spec, initial, INITIAL_VALUE_TERMS).n
    quotients = [b / a for a, b in zip(n[-INITIAL_VALUE_TAIL:], other[-INITIAL_VALUE_TAIL:])]
    spread = (max(quotients) - min(quotients)) / max(quotients)
    tail = range(INITIAL_VALUE_TERMS - 2 * INITIAL_VALUE_TAIL, INITIAL_VALUE_TERMS)
    limsup = max(n[i] / n[i - 1] for i in tail)
    other_limsup = max(other[i] / other[i - 1] for i in tail)
    if spread >= tolerance or abs(limsup - other_limsup) >= tolerance:
        return _failure(
            f"initial values {initial}: quotient spread {spread:.3g}, "
            f"ratio suprema {limsup:.12f} vs {other_limsup:.12f}",
            spec=spec,
        )
    return CaseOutcome(True)


# --- Sturmian-like tails below sqrt(3) ---


def sturmian_tail_case(rng: random.Random) -> CaseOutcome:
    burn_in = STURMIAN_TAIL_HORIZON - 256
    spec, estimate = _spec_with_delta_below(
        rng, sampler.random_free_tail_spec, STURMIAN_TAIL_CEILING, burn_in, 256
    )
    if spec is None:
        return CaseOutcome(True, detail="no spec below the ceiling", skipped=True)
    regime = periodic_regime(spec)
    settled = regime.start + 2 * regime.period
    jumps = t_family(spec, STURMIAN_TAIL_HORIZON).indices
    values = psi_values(spec, STURMIAN_TAIL_HORIZON)
    for previous, t in zip(jumps, jumps[1:]):
        if t > settled and values[t - 1] != IndexValue(previous - 1):
            return _failure(
                f"delta ~ {estimate.value:.6f} but psi({t}) = {values[t - 1].render()}, "
                f"previous jump {previous}",
                spec=spec, index=t,
            )
    return CaseOutcome(True)


# --- Appendix inequalities ---


def jump_growth_case(rng: random.Random) -> CaseOutcome:
    spec = sampler.random_reduced_spec(rng)
    report = appendix_diagnostics(spec, DIAGNOSTIC_TERMS)
    if not report.jump_growth_holds:
        failures = [t for t, ok in report.jump_growth if not ok]
        return _failure(f"n_(t+1) <= n_t + n_(t-1) at t = {failures[:5]}", spec=spec, index=failures[0])
    if report.bound_holds is False:
        return _failure(
            f"ratio above 2 - 3^-{report.bound} at i = {report.bound_failures[:5]}",
            spec=spec, index=report.bound_failures[0],
        )
    if report.contraction_holds is False:
        return _failure(
            f"hull of alpha does not contract at i = {report.contraction_failures[:5]}",
            spec=spec, index=report.contraction_failures[0],
        )
    return CaseOutcome(True)


# --- Gap of the spectrum ---


def spectrum_gap_case(max_entry: int = 3, max_period: int = 6, max_preperiod: int = 3) -> CaseOutcome:
    hits = spectrum_scan(max_entry, max_period, max_preperiod, (SQRT3, GAP_UPPER), inclusive=True)
    inside = [hit for hit in hits if hit.value != SQRT3 and hit.value != GAP_UPPER]
    if inside:
        return _failure(f"{len(inside)} values inside the gap, first {inside[0].b.render()}")
    for end in (SQRT3, GAP_UPPER):
        if not any(hit.value == end for hit in hits):
            return _failure(f"gap endpoint {end} was not found by the inclusive scan")
    return CaseOutcome(True)


# --- Sturmian routes ---


def _standard_sequence_problem(s: IntSequence) -> str | None:
    """``sigma_{n-1}^p sigma_{n-2}`` is a palindrome followed by ``ba`` or ``ab``."""
    for n in range(2, 9):
        older = sturmian_standard_sequence(s, n - 2)
        current = sturmian_standard_sequence(s, n - 1)
        tail = FiniteWord.of("ba" if n % 2 == 0 else "ab")
        for p in range(1, s.term(n) + 1):
            word = current * p + older
            if not word.endswith(tail) or not is_palindrome(word[: len(word) - 2]):
                return f"sigma_{n - 1}^{p} sigma_{n - 2} = {word} breaks the palindrome rule"
    return None


def _block_problem(s: IntSequence) -> str | None:
    """``pi_{t_k + l} = sigma_k^{l+1} pi_{t_{k-1} - 1}`` with ``t_k = s_1 + ... + s_k``."""
    t = [0]
    for k in range(1, 8):
        t.append(t[-1] + s.term(k))
    n = length_sequence(sturmian_psi(s), t[7] + 1).n
    word = sturmian_word(s, 1).stream
    for k in range(3, 7):
        sigma = sturmian_standard_sequence(s, k)
        inner = word.prefix(n[t[k - 1] - 2])
        for ell in range(0, s.term(k + 1) + 1):
            if word.prefix(n[t[k] + ell - 1]) != sigma * (ell + 1) + inner:
                return f"pi_(t_{k}+{ell}) differs from sigma_{k}^{ell + 1} pi_(t_{k - 1}-1)"
    return None


def sturmian_routes_case(rng: random.Random) -> CaseOutcome:
    s = sampler.random_int_sequence(rng, sampler.MAX_STURMIAN_ENTRY, sampler.MAX_STURMIAN_PERIOD)
    standard = sturmian_word(s, ROUTE_LENGTH).prefix(ROUTE_LENGTH)
    unfolded = word_from_psi(sturmian_psi(s), ROUTE_LENGTH).prefix(ROUTE_LENGTH)
    closed = episturmian_word(sturmian_directive(s), ROUTE_LENGTH).prefix(ROUTE_LENGTH)
    for name, other in (("directive function", unfolded), ("palindromic closure", closed)):
        if other != standard:
            first = next(i for i, (a, b) in enumerate(zip(standard, other)) if a != b)
            return _failure(
                f"slope {s.render()}: {name} route differs at letter {first}",
                spec=sturmian_psi(s), prefix=standard, index=first,
            )
    problem = _standard_sequence_problem(s) or _block_problem(s)
    if problem:
        return _failure(f"slope {s.render()}: {problem}", spec=sturmian_psi(s), prefix=standard)
    return CaseOutcome(True)
