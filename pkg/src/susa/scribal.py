"""Straight-line interpreter for scribal procedures.

A procedure is an ordered list of steps whose opcodes are the operations
the tablets name: multiply, make the reciprocal, halve, square, take the
square root, add, subtract, hold (store in a named register), recall,
and put (bind a literal).  Execution is exact and every step is logged
with its tablet line.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence, Union

from . import numeral
from .errors import (
    CorpusFormatError,
    SusaError,
    UnboundReference,
    UnknownLabel,
)
from .numtheory import reciprocal, sqrt_exact
from .trace import Trace, TraceEntry, numeral_from_doc

DEFAULT_REGISTER = "head"


class Op(str, enum.Enum):
    MULTIPLY = "Multiply"
    RECIPROCAL = "Reciprocal"
    HALVE = "Halve"
    SQUARE = "Square"
    SQUARE_ROOT = "SquareRoot"
    ADD = "Add"
    SUBTRACT = "Subtract"
    HOLD = "Hold"
    RECALL = "Recall"
    PUT = "Put"


ARITY = {
    Op.MULTIPLY: 2, Op.ADD: 2, Op.SUBTRACT: 2,
    Op.RECIPROCAL: 1, Op.HALVE: 1, Op.SQUARE: 1, Op.SQUARE_ROOT: 1,
    Op.HOLD: 1, Op.PUT: 1,
    Op.RECALL: 0,
}

# Recall reads a register, so it has no entry here
APPLY = {
    Op.MULTIPLY: numeral.mul,
    Op.ADD: numeral.add,
    Op.SUBTRACT: numeral.checked_sub,
    Op.RECIPROCAL: reciprocal,
    Op.HALVE: numeral.halve,
    Op.SQUARE: numeral.square,
    Op.SQUARE_ROOT: sqrt_exact,
    Op.HOLD: numeral.exact,
    Op.PUT: numeral.exact,
}


@dataclass(frozen=True)
class Lit:
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", numeral.exact(self.value))


@dataclass(frozen=True)
class StepRef:
    index: int


@dataclass(frozen=True)
class Input:
    name: str


@dataclass(frozen=True)
class Reg:
    name: str = DEFAULT_REGISTER


Operand = Union[Lit, StepRef, Input, Reg]


@dataclass(frozen=True)
class Step:
    opcode: Op
    operands: tuple[Operand, ...] = ()
    name: str | None = None
    line: str | None = None
    sic: str | None = None
    note: str | None = None
    register: str | None = None
    reconstructed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "opcode", Op(self.opcode))
        object.__setattr__(self, "operands", tuple(self.operands))
        if len(self.operands) != ARITY[self.opcode]:
            raise ValueError(f"{self.opcode.value} takes {ARITY[self.opcode]} operands, "
                             f"got {len(self.operands)}")
        if self.opcode in (Op.HOLD, Op.RECALL) and self.register is None:
            object.__setattr__(self, "register", DEFAULT_REGISTER)


@dataclass(frozen=True)
class Procedure:
    name: str
    inputs: tuple[str, ...]
    steps: tuple[Step, ...]
    outputs: Mapping[str, int]
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "steps", tuple(self.steps))
        if not self.outputs:
            raise ValueError(f"procedure {self.name!r} has no outputs")
        for i, step in enumerate(self.steps):
            for op in step.operands:
                if isinstance(op, StepRef) and not 0 <= op.index < i:
                    raise ValueError(f"step {i} refers forward to step {op.index}")
                if isinstance(op, Input) and op.name not in self.inputs:
                    raise ValueError(f"step {i} uses undeclared input {op.name!r}")
        for out, idx in self.outputs.items():
            if not 0 <= idx < len(self.steps):
                raise ValueError(f"output {out!r} refers to missing step {idx}")

    def index_of(self, name: str) -> int:
        for i, step in enumerate(self.steps):
            if step.name == name:
                return i
        raise UnboundReference(f"no step named {name!r}")


def execute(proc: Procedure, inputs: Mapping[str, numeral.Numberish]) -> Trace:
    missing = [n for n in proc.inputs if n not in inputs]
    if missing:
        raise UnboundReference(f"inputs not bound: {', '.join(missing)}")
    bound = {n: numeral.exact(inputs[n]) for n in proc.inputs}
    registers: dict[str, Fraction] = {}
    results: list[Fraction] = []
    entries = []

    def resolve(op: Operand) -> Fraction:
        if isinstance(op, Lit):
            return op.value
        if isinstance(op, StepRef):
            return results[op.index]
        if isinstance(op, Input):
            return bound[op.name]
        if op.name not in registers:
            raise UnboundReference(f"register {op.name!r} holds nothing")
        return registers[op.name]

    for i, step in enumerate(proc.steps):
        try:
            values = tuple(resolve(op) for op in step.operands)
            if step.opcode is Op.RECALL:
                if step.register not in registers:
                    raise UnboundReference(f"register {step.register!r} holds nothing")
                result = registers[step.register]
            else:
                result = APPLY[step.opcode](*values)
            if step.opcode is Op.HOLD:
                registers[step.register] = result
        except SusaError as err:
            raise err.locate(i, step.line)
        results.append(result)
        entries.append(TraceEntry(
            index=i, opcode=step.opcode.value, operands=values, result=result,
            label=step.name, line=step.line, sic=step.sic, note=step.note,
            register=step.register, reconstructed=step.reconstructed,
        ))

    outputs = {name: results[idx] for name, idx in proc.outputs.items()}
    return Trace(proc.name, bound, tuple(entries), outputs, proc.notes)


def replay(trace: Trace) -> list[int]:
    """Indices of entries whose result does not follow from their operands."""
    registers: dict[str, Fraction] = {}
    bad = []
    for e in trace.entries:
        op = Op(e.opcode)
        if op is Op.RECALL:
            ok = registers.get(e.register) == e.result
        else:
            try:
                ok = APPLY[op](*e.operands) == e.result
            except SusaError:
                ok = False
        if op is Op.HOLD:
            registers[e.register] = e.result
        if not ok:
            bad.append(e.index)
    return bad


@dataclass(frozen=True)
class TraceReport:
    matched: tuple[str, ...]
    mismatched: tuple[tuple[str, Fraction, Fraction], ...] = field(default=())

    @property
    def passed(self) -> bool:
        return not self.mismatched

    def __str__(self) -> str:
        total = len(self.matched) + len(self.mismatched)
        lines = [f"{'pass' if self.passed else 'FAIL'}: {len(self.matched)}/{total} matched"]
        for label, want, got in self.mismatched:
            lines.append(f"  {label}: expected {numeral.show(want)}, got {numeral.show(got)}")
        return "\n".join(lines)


def compare_trace(actual: Trace, expected: Sequence[tuple[str, numeral.Numberish]]) -> TraceReport:
    known = set(actual.labels())
    matched, mismatched = [], []
    for label, want in expected:
        if label not in known:
            raise UnknownLabel(f"trace has no entry labelled {label!r}")
        want = numeral.exact(want)
        got = actual.value(label)
        if got == want:
            matched.append(label)
        else:
            mismatched.append((label, want, got))
    return TraceReport(tuple(matched), tuple(mismatched))


# procedure documents


def _operand_from_doc(doc, names: Mapping[str, int]) -> Operand:
    if not isinstance(doc, Mapping) or len(doc) != 1:
        raise CorpusFormatError(f"operand must be a one-key object, got {doc!r}")
    (kind, value), = doc.items()
    if kind == "lit":
        return Lit(numeral_from_doc(value))
    if kind == "input":
        return Input(value)
    if kind == "reg":
        return Reg(value)
    if kind == "step":
        if isinstance(value, int):
            return StepRef(value)
        if value not in names:
            raise UnboundReference(f"operand refers to unknown or later step {value!r}")
        return StepRef(names[value])
    raise CorpusFormatError(f"unknown operand kind {kind!r}")


def procedure_from_doc(doc: Mapping) -> Procedure:
    """Build a procedure from its JSON form.

    Operands are ``{"lit": "p/q"}``, ``{"input": name}``, ``{"reg": name}``
    or ``{"step": index-or-name}``; names resolve to earlier steps only.
    """
    names: dict[str, int] = {}
    steps = []
    for i, s in enumerate(doc["steps"]):
        try:
            opcode = Op(s["opcode"])
        except ValueError:
            raise CorpusFormatError(f"unknown opcode {s['opcode']!r}") from None
        operands = [_operand_from_doc(o, names) for o in s.get("operands", ())]
        step = Step(opcode, tuple(operands), name=s.get("name"), line=s.get("line"),
                    sic=s.get("sic"), note=s.get("note"), register=s.get("register"),
                    reconstructed=s.get("reconstructed", False))
        if step.name is not None:
            if step.name in names:
                raise CorpusFormatError(f"duplicate step name {step.name!r}")
            names[step.name] = i
        steps.append(step)
    outputs = {}
    for out, ref in doc["outputs"].items():
        if isinstance(ref, int):
            outputs[out] = ref
        elif ref in names:
            outputs[out] = names[ref]
        else:
            raise UnboundReference(f"output {out!r} refers to unknown step {ref!r}")
    return Procedure(doc["name"], tuple(doc.get("inputs", ())), tuple(steps), outputs,
                     tuple(doc.get("notes", ())))


def _operand_doc(op: Operand, proc: Procedure):
    if isinstance(op, Lit):
        return {"lit": numeral.format_rational(op.value)}
    if isinstance(op, Input):
        return {"input": op.name}
    if isinstance(op, Reg):
        return {"reg": op.name}
    name = proc.steps[op.index].name
    return {"step": name if name is not None else op.index}


def procedure_doc(proc: Procedure) -> dict:
    steps = []
    for step in proc.steps:
        s = {"opcode": step.opcode.value,
             "operands": [_operand_doc(o, proc) for o in step.operands]}
        for key in ("name", "line", "sic", "note"):
            if getattr(step, key) is not None:
                s[key] = getattr(step, key)
        if step.opcode in (Op.HOLD, Op.RECALL):
            s["register"] = step.register
        if step.reconstructed:
            s["reconstructed"] = True
        steps.append(s)
    doc = {
        "name": proc.name,
        "inputs": list(proc.inputs),
        "steps": steps,
        "outputs": {k: proc.steps[i].name or i for k, i in proc.outputs.items()},
    }
    if proc.notes:
        doc["notes"] = list(proc.notes)
    return doc
