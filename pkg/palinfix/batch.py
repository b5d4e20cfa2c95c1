# palinfix/batch.py
"""
Batch runners behind the ``palinfix`` subcommands.

Each ``run_*`` function takes the parsed argparse namespace, logs its work as
numbered steps, writes results to stdout or to the requested files and
returns a process exit code: 0 on success, 1 when a check or verification
fails, 2 on bad input.
"""

import json
import logging
import sys
from pathlib import Path

from .core import codec
from .core import config as core_config
from .core.cf import QuadraticValue, spectrum_scan
from .core.errors import InvalidParameters, PalinfixError
from .core.generators import word_from_psi
from .core.lengths import appendix_diagnostics, delta_estimate
from .core.oracle import abundance_check, delta_from_word, palindromic_prefixes
from .core.presets import preset
from .core.psi import (
    DirectiveFunctionSpec,
    ViolationAt,
    first_letters,
    is_A_strict,
    is_reduced,
    periodic_regime,
    recover_psi,
    t_family,
)
from .core.words import WordStream
from .services.suites import SUITES, run_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


# --- Helpers ---


def _load_spec(args) -> DirectiveFunctionSpec:
    if getattr(args, "preset", None):
        logger.debug(f"Using preset {args.preset}")
        return preset(args.preset)
    if getattr(args, "spec", None):
        return codec.load_spec(args.spec)
    raise InvalidParameters("give a spec JSON file or --preset NAME")


def _positive(name: str, value: int | None) -> None:
    if value is not None and value < 1:
        raise InvalidParameters(f"{name} must be positive, got {value}")


def _setting_int(value: int | None, section: str, key: str) -> int:
    return value if value is not None else core_config.get_int(section, key)


def _emit(text: str, path: "str | None") -> None:
    """Writes to ``path`` when given, else to stdout."""
    if path:
        codec.write_text(path, text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(data, path: "str | None") -> None:
    _emit(json.dumps(data, indent=2), path)


def _guarded(label: str, runner, args) -> int:
    try:
        return runner(args)
    except PalinfixError as e:
        logger.error(f"{label}: {type(e).__name__}: {e}")
    except (ValueError, OSError) as e:
        logger.error(f"{label}: {e}")
    return EXIT_USAGE


# --- generate ---


def _generate(args) -> int:
    _positive("--length", args.length)
    logger.info("Generate: 1. Loading spec.")
    spec = _load_spec(args)

    logger.info(f"Generate: 2. Building the word up to {args.length} letters.")
    generated = word_from_psi(spec, args.length)
    word = generated.stream.available_prefix(args.length)
    if len(word) < args.length:
        logger.warning(f"Generate: the table only determines {len(word)} letters.")

    logger.info("Generate: 3. Writing output.")
    out_dir = Path(args.output_dir) if args.output_dir else None
    if args.emit in ("word", "both"):
        _emit(word.render(), str(out_dir / "word.txt") if out_dir else None)
    if args.emit in ("profile", "both"):
        rows = [row for row in generated.profile.rows() if row[1] <= len(word)]
        if out_dir:
            codec.write_csv(out_dir / "profile.csv", ("i", "n_i", "psi_i"), rows)
        else:
            codec.write_csv_rows(sys.stdout, ("i", "n_i", "psi_i"), rows)
    return EXIT_OK


def run_generate(args) -> int:
    return _guarded("Generate", _generate, args)


# --- delta ---


def _delta(args) -> int:
    _positive("--window", args.window)
    if args.word:
        logger.info(f"Delta: 1. Reading word from {args.word}.")
        word = codec.read_word(args.word)
        burn_in = _setting_int(args.burn_in, "Delta", "word_burn_in")
        logger.info(f"Delta: 2. Scanning {len(word)} letters for palindromic prefixes.")
        estimate = delta_from_word(
            WordStream.from_word(word),
            len(word),
            burn_in=burn_in,
            infinity_gap=core_config.get_int("Delta", "infinity_gap"),
        )
    else:
        logger.info("Delta: 1. Loading spec.")
        spec = _load_spec(args)
        burn_in = _setting_int(args.burn_in, "Delta", "burn_in")
        window = _setting_int(args.window, "Delta", "window")
        logger.info(f"Delta: 2. Iterating lengths (burn-in {burn_in}, window {window}).")
        estimate = delta_estimate(spec, burn_in=burn_in, window=window)

    logger.info("Delta: 3. Reporting.")
    report = estimate.as_dict()
    if estimate.exact is not None:
        report["exact_decimal"] = estimate.exact.decimal(10)
    _emit_json(report, args.output)
    return EXIT_OK


def run_delta(args) -> int:
    return _guarded("Delta", _delta, args)


# --- check ---


def _check(args) -> int:
    _positive("--horizon", args.horizon)
    logger.info("Check: 1. Loading spec.")
    spec = _load_spec(args)

    logger.info(f"Check: 2. Testing reducedness (horizon {args.horizon}).")
    status = is_reduced(spec, args.horizon)
    family = t_family(spec, args.horizon)
    report = {
        "reduced": status.describe(),
        "t_family": list(family.indices),
        "t_family_exhaustive": family.exhaustive,
    }
    regime = periodic_regime(spec)
    if regime is not None:
        report["regime"] = {"start": regime.start, "offsets": list(regime.offsets)}
        report["finite_t_family"] = regime.finite_t_family

    if args.alphabet:
        logger.info(f"Check: 3. Testing strictness over {args.alphabet}.")
        report["strict"] = is_A_strict(spec, args.alphabet, args.horizon).describe()

    _emit_json(report, args.output)
    if isinstance(status, ViolationAt):
        logger.info(f"Check: spec is not reduced ({status.describe()}).")
        return EXIT_FAILED
    return EXIT_OK


def run_check(args) -> int:
    return _guarded("Check", _check, args)


# --- recover ---


def _recover(args) -> int:
    logger.info(f"Recover: 1. Reading word from {args.word}.")
    word = codec.read_word(args.word)

    logger.info("Recover: 2. Checking abundance.")
    verdict = abundance_check(palindromic_prefixes(word).trusted())
    logger.info(f"Recover: {verdict.describe()}")

    logger.info(f"Recover: 3. Reading psi off {len(word)} letters.")
    spec, profile = recover_psi(WordStream.from_word(word), len(word))
    data = {
        "spec": codec.spec_to_dict(spec),
        "lengths": list(profile.n),
        "abundance": verdict.describe(),
    }
    _emit_json(data, args.output)
    return EXIT_OK


def run_recover(args) -> int:
    return _guarded("Recover", _recover, args)


# --- first-letters ---


def _first_letters(args) -> int:
    _positive("--count", args.count)
    logger.info("First letters: 1. Loading spec.")
    spec = _load_spec(args)
    logger.info(f"First letters: 2. Computing {args.count} letters.")
    _emit(first_letters(spec, args.count).render(), args.output)
    return EXIT_OK


def run_first_letters(args) -> int:
    return _guarded("First letters", _first_letters, args)


# --- scan ---


def _scan(args) -> int:
    lo, hi = QuadraticValue.parse(args.lo), QuadraticValue.parse(args.hi)
    if not lo < hi:
        raise InvalidParameters(f"empty interval [{lo}, {hi}]")
    logger.info(
        f"Scan: 1. Enumerating b with entries <= {args.max_entry}, period <= {args.max_period}, "
        f"preperiod <= {args.max_preperiod}."
    )
    hits = spectrum_scan(
        args.max_entry, args.max_period, args.max_preperiod, (lo, hi), inclusive=args.inclusive
    )
    logger.info(f"Scan: 2. Writing {len(hits)} hits.")
    header = ("b", "value", "decimal")
    rows = [hit.row() for hit in hits]
    if args.output:
        codec.write_csv(args.output, header, rows)
    else:
        codec.write_csv_rows(sys.stdout, header, rows)
    return EXIT_OK


def run_scan(args) -> int:
    return _guarded("Scan", _scan, args)


# --- verify ---


def _verify(args) -> int:
    seed = _setting_int(args.seed, "Verify", "seed")
    cases = _setting_int(args.cases, "Verify", "cases")
    _positive("--cases", cases)
    tolerance = args.tolerance if args.tolerance is not None else core_config.get_float("Delta", "tolerance")
    names = list(SUITES) if args.suite == "all" else [args.suite]

    results = []
    for step, name in enumerate(names, start=1):
        logger.info(f"Verify: {step}. Suite {name}.")
        result = run_suite(name, seed, cases, threads=args.threads, tolerance=tolerance)
        print(result.summary())
        results.append(result)

    failed = [r for r in results if not r.ok]
    if not failed:
        return EXIT_OK
    recorded = [c for r in failed for c in r.counterexamples]
    if not recorded:
        logger.error(f"Verify: {len(failed)} suite(s) failed without a recorded counterexample.")
        return EXIT_FAILED
    first = recorded[0]
    if args.counterexample:
        codec.write_json(args.counterexample, first)
    else:
        print(json.dumps(first, indent=2))
    logger.error(f"Verify: {len(failed)} suite(s) failed; first failure in {first['suite']} case {first['case']}.")
    return EXIT_FAILED


def run_verify(args) -> int:
    return _guarded("Verify", _verify, args)


# --- diagnostics ---


def _diagnostics(args) -> int:
    _positive("--count", args.count)
    logger.info("Diagnostics: 1. Loading spec.")
    spec = _load_spec(args)
    logger.info(f"Diagnostics: 2. Checking {args.count} terms.")
    report = appendix_diagnostics(spec, args.count)
    if args.trace:
        logger.info(f"Diagnostics: 3. Writing alpha trace to {args.trace}.")
        codec.write_csv(args.trace, ("i", "alpha", "width"), report.trace_rows())
    _emit_json(report.as_dict(), args.output)
    holds = (report.jump_growth_holds, report.bound_holds, report.contraction_holds)
    return EXIT_FAILED if False in holds else EXIT_OK


def run_diagnostics(args) -> int:
    return _guarded("Diagnostics", _diagnostics, args)


# --- config ---


def _config(args) -> int:
    if not core_config.ensure_config_dir_exists():
        return EXIT_USAGE
    core_config.create_default_config_if_missing()
    if args.action == "set":
        section, key, value = args.values
        logger.info(f"Config: setting [{section}] {key} = '{value}'")
        return EXIT_OK if core_config.set_setting(section, key, value) else EXIT_USAGE
    config = core_config.load_config()
    print(f"# {core_config.get_config_file()}")
    for section in config.sections():
        print(f"[{section}]")
        for key, value in config.items(section):
            print(f"{key} = {value}")
    return EXIT_OK


def run_config(args) -> int:
    return _guarded("Config", _config, args)


RUNNERS = {
    "generate": run_generate,
    "delta": run_delta,
    "check": run_check,
    "recover": run_recover,
    "first-letters": run_first_letters,
    "scan": run_scan,
    "verify": run_verify,
    "diagnostics": run_diagnostics,
    "config": run_config,
}
