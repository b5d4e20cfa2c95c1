# palinfix/core/codec.py
"""JSON and CSV interchange: directive-function specs, profiles, word files."""

import csv
import json
import logging
from pathlib import Path
from typing import Any, Iterable, Sequence, TextIO

from .cf import IntSequence
from .errors import CodecError, InvalidSpec
from .psi import (
    DeltaTail,
    DirectiveFunctionSpec,
    ExplicitTail,
    OffsetTail,
    PrevTail,
    SturmianTail,
)
from .values import IndexValue, LetterValue, PsiValue
from .words import FiniteWord, LetterSequence, letter_from_symbol, letter_symbol

logger = logging.getLogger(__name__)


# --- Spec <-> JSON ---


def _value_to_dict(i: int, value: PsiValue) -> dict:
    if isinstance(value, LetterValue):
        return {"i": i, "letter": letter_symbol(value.letter)}
    return {"i": i, "index": value.index}


def _value_from_dict(entry: dict) -> PsiValue:
    if "letter" in entry:
        return LetterValue(letter_from_symbol(str(entry["letter"])))
    if "index" in entry:
        return IndexValue(int(entry["index"]))
    if "value" in entry:
        raw = entry["value"]
        # JSON strings are letters, numbers are indices
        if isinstance(raw, str):
            return LetterValue(letter_from_symbol(raw))
        return IndexValue(int(raw))
    raise CodecError(f"table entry without letter/index/value: {entry}")


def _int_sequence(raw: Any) -> IntSequence:
    if isinstance(raw, str):
        return IntSequence.parse(raw)
    if isinstance(raw, list):
        return IntSequence((), tuple(raw))
    return IntSequence(tuple(raw.get("preperiod", ())), tuple(raw["period"]))


def _letter_sequence(raw: Any) -> LetterSequence:
    if isinstance(raw, str):
        return LetterSequence.parse(raw)
    return LetterSequence(
        FiniteWord.of(raw.get("preperiod", "")).letters, FiniteWord.of(raw["period"]).letters
    )


def tail_to_dict(tail) -> dict:
    data: dict[str, Any] = {"kind": tail.kind}
    if isinstance(tail, OffsetTail):
        data["offsets"] = list(tail.offsets)
    elif isinstance(tail, SturmianTail):
        data["s"] = {"preperiod": list(tail.s.preperiod), "period": list(tail.s.period)}
    elif isinstance(tail, DeltaTail):
        data["delta"] = {
            "preperiod": FiniteWord(tail.delta.preperiod).render(),
            "period": FiniteWord(tail.delta.period).render(),
        }
    return data


def tail_from_dict(data: dict):
    kind = data.get("kind")
    if kind == PrevTail.kind:
        return PrevTail()
    if kind == OffsetTail.kind:
        return OffsetTail(tuple(int(x) for x in data["offsets"]))
    if kind == SturmianTail.kind:
        return SturmianTail(_int_sequence(data["s"]))
    if kind == DeltaTail.kind:
        return DeltaTail(_letter_sequence(data["delta"]))
    if kind == ExplicitTail.kind:
        return ExplicitTail()
    raise CodecError(f"unknown tail kind: {kind!r}")


def spec_to_dict(spec: DirectiveFunctionSpec) -> dict:
    return {
        "table": [_value_to_dict(i, v) for i, v in enumerate(spec.table, start=1)],
        "tail": tail_to_dict(spec.tail),
    }


def spec_from_dict(data: dict) -> DirectiveFunctionSpec:
    """Accepts a spec object or a document carrying one under ``"spec"``."""
    if not isinstance(data, dict):
        raise CodecError("a spec must be a JSON object")
    if "spec" in data and "tail" not in data:
        data = data["spec"]
    try:
        entries = sorted(data.get("table", []), key=lambda e: int(e["i"]))
        for expected, entry in enumerate(entries, start=1):
            if int(entry["i"]) != expected:
                raise CodecError(f"table must cover 1..m without gaps; missing i={expected}")
        table = tuple(_value_from_dict(e) for e in entries)
        tail = tail_from_dict(data.get("tail", {"kind": ExplicitTail.kind}))
        return DirectiveFunctionSpec(table, tail)
    except (KeyError, TypeError, ValueError) as e:
        raise CodecError(f"malformed spec: {e}") from e


def dumps_spec(spec: DirectiveFunctionSpec) -> str:
    return json.dumps(spec_to_dict(spec), indent=2)


def loads_spec(text: str) -> DirectiveFunctionSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise CodecError(f"invalid JSON: {e}") from e
    return spec_from_dict(data)


def load_spec(path: "str | Path") -> DirectiveFunctionSpec:
    path = Path(path)
    logger.debug(f"Loading spec from {path}")
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise CodecError(f"cannot read spec file {path}: {e}") from e
    try:
        return loads_spec(text)
    except InvalidSpec:
        raise
    except CodecError as e:
        raise CodecError(f"{path}: {e}") from e


# --- Files ---


def ensure_parent_dir(path: "str | Path") -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def write_json(path: "str | Path", data: Any) -> None:
    path = ensure_parent_dir(path)
    path.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")
    logger.info(f"Wrote {path}")


def write_text(path: "str | Path", text: str) -> None:
    path = ensure_parent_dir(path)
    path.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    logger.info(f"Wrote {path}")


def write_csv_rows(stream: TextIO, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def write_csv(path: "str | Path", header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    path = ensure_parent_dir(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        write_csv_rows(handle, header, rows)
    logger.info(f"Wrote {path}")


def read_word(path: "str | Path") -> FiniteWord:
    """A word file: display letters or comma-separated indices, whitespace ignored."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise CodecError(f"cannot read word file {path}: {e}") from e
    return FiniteWord.parse("".join(text.split()))
