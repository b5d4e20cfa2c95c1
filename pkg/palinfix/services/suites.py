# palinfix/services/suites.py
"""Named verification suites and the thread pool that runs them."""

import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Callable

from ..core import config as core_config
from ..core.codec import spec_to_dict
from ..core.errors import InvalidParameters, PalinfixError
from . import properties
from .properties import CaseOutcome

logger = logging.getLogger(__name__)

PREFIX_CHARS = 200
SEED_STRIDE = 1_000_003

CaseRunner = Callable[[random.Random, int, float], CaseOutcome]


@dataclass(frozen=True)
class Suite:
    name: str
    description: str
    run_case: CaseRunner
    max_cases: int | None = None


def _plain(case: Callable[[random.Random], CaseOutcome]) -> CaseRunner:
    return lambda rng, index, tolerance: case(rng)


SUITES: dict[str, Suite] = {
    suite.name: suite
    for suite in (
        Suite(
            "lemma-5x",
            "palindromic-prefix properties of random small words",
            _plain(properties.prefix_properties_case),
        ),
        Suite(
            "theorem-412",
            "reduced specs are exact, non-reduced specs leak extra prefixes",
            lambda rng, index, tolerance: properties.reduced_or_not_case(rng, index),
        ),
        Suite(
            "theorem-414",
            "recovering psi from the generated word gives the spec back",
            _plain(properties.recovery_case),
        ),
        Suite(
            "prop-62",
            "delta does not depend on the initial values",
            lambda rng, index, tolerance: properties.initial_values_case(rng, tolerance),
        ),
        Suite(
            "lemma-71",
            "low-delta specs jump back to the previous jump",
            _plain(properties.sturmian_tail_case),
        ),
        Suite(
            "lemma-91",
            "jump growth, back-reference bound and alpha contraction",
            _plain(properties.jump_growth_case),
        ),
        Suite(
            "gap-77",
            "exhaustive spectrum scan of the sqrt(3) gap",
            lambda rng, index, tolerance: properties.spectrum_gap_case(),
            max_cases=1,
        ),
        Suite(
            "sturmian-3way",
            "three constructions of a characteristic Sturmian word agree",
            _plain(properties.sturmian_routes_case),
        ),
    )
}


def suite_names() -> list[str]:
    return list(SUITES)


@dataclass
class SuiteResult:
    suite: str
    seed: int
    cases: int
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def summary(self) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        return (
            f"{self.suite}: {verdict} ({self.passed} passed, {self.failed} failed, "
            f"{self.skipped} skipped of {self.cases}; seed {self.seed})"
        )

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "cases": self.cases,
            "passed": self.passed,
            "failed": self.failed,
            "skipped": self.skipped,
            "ok": self.ok,
            "counterexamples": self.counterexamples,
        }


def case_rng(seed: int, index: int) -> random.Random:
    """Per-case generator; identical for every thread count."""
    return random.Random(seed * SEED_STRIDE + index)


def _run_one(suite: Suite, seed: int, tolerance: float, index: int) -> tuple[int, CaseOutcome]:
    try:
        outcome = suite.run_case(case_rng(seed, index), index, tolerance)
    except PalinfixError as e:
        logger.warning(f"{suite.name} case {index} raised {type(e).__name__}: {e}")
        outcome = CaseOutcome(False, f"{type(e).__name__}: {e}")
    return index, outcome


def counterexample(suite: str, index: int, outcome: CaseOutcome) -> dict:
    """Replayable failure record; ``load_spec`` reads its ``"spec"`` key."""
    record: dict = {"suite": suite, "case": index, "detail": outcome.detail}
    if outcome.spec is not None:
        record["spec"] = spec_to_dict(outcome.spec)
    if outcome.prefix is not None:
        record["prefix"] = outcome.prefix[:PREFIX_CHARS].render()
    if outcome.index is not None:
        record["index"] = outcome.index
    return record


def run_suite(
    name: str,
    seed: int,
    cases: int,
    threads: int | None = None,
    tolerance: float = 1e-6,
) -> SuiteResult:
    suite = SUITES.get(name)
    if suite is None:
        raise InvalidParameters(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    if cases < 1:
        raise InvalidParameters("cases must be positive")
    if suite.max_cases is not None and cases > suite.max_cases:
        logger.info(f"{name} is deterministic; running {suite.max_cases} case instead of {cases}")
        cases = suite.max_cases

    workers = min(core_config.effective_threads(threads), cases)
    logger.info(f"Running suite {name}: {cases} cases, seed {seed}, {workers} threads")
    job = partial(_run_one, suite, seed, tolerance)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        outcomes = sorted(pool.map(job, range(cases)), key=lambda pair: pair[0])

    result = SuiteResult(suite=name, seed=seed, cases=cases)
    for index, outcome in outcomes:
        if outcome.skipped:
            result.skipped += 1
        elif outcome.ok:
            result.passed += 1
        else:
            result.failed += 1
            result.counterexamples.append(counterexample(name, index, outcome))
            logger.debug(f"{name} case {index} failed: {outcome.detail}")
    logger.info(result.summary())
    return result
