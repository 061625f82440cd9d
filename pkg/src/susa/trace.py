"""Executed step logs and their JSON document form.

Both the scribal interpreter and the modern solvers produce a :class:`Trace`.
Serialization is byte-stable: keys are emitted in a fixed order and every
number is written as canonical sexagesimal text plus a ``"p/q"`` rational.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from . import numeral
from .errors import UnknownLabel


@dataclass(frozen=True)
class TraceEntry:
    index: int
    opcode: str
    operands: tuple[Fraction, ...]
    result: Fraction
    label: str | None = None
    line: str | None = None
    sic: str | None = None
    note: str | None = None
    register: str | None = None
    reconstructed: bool = False


@dataclass(frozen=True)
class Trace:
    procedure: str
    inputs: Mapping[str, Fraction]
    entries: tuple[TraceEntry, ...]
    outputs: Mapping[str, Fraction]
    notes: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.entries)

    def results(self) -> list[Fraction]:
        return [e.result for e in self.entries]

    def labels(self) -> list[str]:
        return [e.label for e in self.entries if e.label]

    def entry(self, label: str) -> TraceEntry:
        for e in self.entries:
            if e.label == label:
                return e
        raise UnknownLabel(f"no trace entry labelled {label!r}")

    def value(self, label: str) -> Fraction:
        return self.entry(label).result


def _frac(x) -> Fraction:
    return x if type(x) is Fraction else Fraction(x)


class Recorder:
    """Accumulates trace entries for solvers that are not scribal procedures."""

    def __init__(self, procedure: str, inputs: Mapping[str, Fraction] | None = None):
        self.procedure = procedure
        self.inputs = dict(inputs or {})
        self.entries: list[TraceEntry] = []
        self.notes: list[str] = []

    def op(self, opcode: str, operands: Iterable[Fraction], result: Fraction,
           label: str | None = None, note: str | None = None) -> Fraction:
        result = _frac(result)
        self.entries.append(TraceEntry(
            index=len(self.entries),
            opcode=opcode,
            operands=tuple(_frac(x) for x in operands),
            result=result,
            label=label,
            note=note,
        ))
        return result

    def note(self, text: str) -> None:
        self.notes.append(text)

    def extend(self, trace: Trace, prefix: str = "") -> None:
        for e in trace.entries:
            label = f"{prefix}{e.label}" if e.label else None
            self.op(e.opcode, e.operands, e.result, label=label, note=e.note)
        self.notes.extend(trace.notes)

    def finish(self, outputs: Mapping[str, Fraction]) -> Trace:
        return Trace(self.procedure, dict(self.inputs), tuple(self.entries),
                     dict(outputs), tuple(self.notes))


# JSON document


def numeral_doc(value: Fraction) -> dict:
    value = Fraction(value)
    sexagesimal = numeral.format(value) if numeral.is_terminating(value) else None
    return {"sexagesimal": sexagesimal, "rational": numeral.format_rational(value)}


def numeral_from_doc(doc) -> Fraction:
    if isinstance(doc, Mapping):
        return numeral.exact(doc["rational"])
    return numeral.exact(doc)


def entry_doc(e: TraceEntry) -> dict:
    doc = {
        "index": e.index,
        "opcode": e.opcode,
        "operands": [numeral_doc(x) for x in e.operands],
        "result": numeral_doc(e.result),
    }
    if e.label is not None:
        doc["label"] = e.label
    if e.line is not None:
        doc["line"] = e.line
    if e.sic is not None:
        doc["sic"] = e.sic
    if e.register is not None:
        doc["register"] = e.register
    if e.reconstructed:
        doc["reconstructed"] = True
    if e.note is not None:
        doc["note"] = e.note
    return doc


def trace_doc(trace: Trace) -> dict:
    doc = {
        "procedure": trace.procedure,
        "inputs": {k: numeral_doc(v) for k, v in trace.inputs.items()},
        "steps": [entry_doc(e) for e in trace.entries],
        "outputs": {k: numeral_doc(v) for k, v in trace.outputs.items()},
    }
    if trace.notes:
        doc["notes"] = list(trace.notes)
    return doc


def dumps(doc) -> str:
    """Deterministic JSON text for any document built by this package."""
    return json.dumps(doc, indent=2, ensure_ascii=True, separators=(",", ": ")) + "\n"


def dumps_trace(trace: Trace) -> str:
    return dumps(trace_doc(trace))


def trace_from_doc(doc: Mapping) -> Trace:
    entries = tuple(
        TraceEntry(
            index=s["index"],
            opcode=s["opcode"],
            operands=tuple(numeral_from_doc(x) for x in s["operands"]),
            result=numeral_from_doc(s["result"]),
            label=s.get("label"),
            line=s.get("line"),
            sic=s.get("sic"),
            note=s.get("note"),
            register=s.get("register"),
            reconstructed=s.get("reconstructed", False),
        )
        for s in doc["steps"]
    )
    return Trace(
        procedure=doc["procedure"],
        inputs={k: numeral_from_doc(v) for k, v in doc["inputs"].items()},
        entries=entries,
        outputs={k: numeral_from_doc(v) for k, v in doc["outputs"].items()},
        notes=tuple(doc.get("notes", ())),
    )
