"""The Susa problems and the modern worked examples as executable data.

Each problem lives in ``data/<id>.json``: the system as expression trees, a
scribal procedure (for tablet problems), expected answers, expected trace
values and the tablet's numeric slips.  Problems are run in scribal mode
(interpreting the procedure) or modern mode (a solver route), verified by
substitution, and cross-checked against each other.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Mapping

from .. import numeral
from ..errors import (
    CorpusFormatError,
    MissingBinding,
    NotPerfectSquare,
    UnknownProblem,
    UnsupportedMode,
)
from ..expr import Equation, equation_from_doc, evaluate, to_text, variables
from ..scribal import Procedure, execute, procedure_from_doc
from ..trace import Trace, numeral_from_doc

FORMAT = "susa-problem/1"
SCRIBAL = "scribal"
MODERN = "modern"
ROUTES = ("substitution", "symmetric", "octic-reduction", "gaussian")


@dataclass(frozen=True)
class Unknown:
    name: str
    label: str
    nonnegative: bool = True


@dataclass(frozen=True)
class TextError:
    line: str
    printed: str
    corrected: Fraction
    note: str = ""


@dataclass(frozen=True)
class ProblemSpec:
    id: str
    title: str
    statement: tuple[Equation, ...]
    unknowns: tuple[Unknown, ...]
    modern_route: str
    modes: tuple[str, ...]
    expected: Mapping[str, Fraction]
    procedure: Procedure | None = None
    inputs: Mapping[str, Fraction] = field(default_factory=dict)
    expected_trace: tuple[tuple[str, Fraction], ...] = ()
    text_errors: tuple[TextError, ...] = ()
    notes: tuple[str, ...] = ()
    labels: Mapping[str, str] = field(default_factory=dict)

    def label(self, name: str) -> str:
        for u in self.unknowns:
            if u.name == name:
                return u.label
        return self.labels.get(name, name)

    @property
    def unknown_names(self) -> tuple[str, ...]:
        return tuple(u.name for u in self.unknowns)


def _check_numeral(doc, where: str) -> Fraction:
    value = numeral_from_doc(doc)
    if isinstance(doc, Mapping) and doc.get("sexagesimal") is not None:
        text = doc["sexagesimal"]
        if numeral.value_of(text, 0) != value:
            raise CorpusFormatError(f"{where}: {text!r} disagrees with {doc['rational']!r}")
    return value


def problem_from_doc(doc: Mapping) -> ProblemSpec:
    if doc.get("format") != FORMAT:
        raise CorpusFormatError(f"unsupported problem format {doc.get('format')!r}")
    pid = doc["id"]
    route = doc["modern_route"]
    if route not in ROUTES:
        raise CorpusFormatError(f"{pid}: unknown modern route {route!r}")
    modes = tuple(doc["modes"])
    if not modes or any(m not in (SCRIBAL, MODERN) for m in modes):
        raise CorpusFormatError(f"{pid}: bad modes {modes!r}")
    procedure = procedure_from_doc(doc["procedure"]) if "procedure" in doc else None
    if (procedure is None) == (SCRIBAL in modes):
        raise CorpusFormatError(f"{pid}: scribal mode needs exactly one procedure")
    return ProblemSpec(
        id=pid,
        title=doc["title"],
        statement=tuple(equation_from_doc(e) for e in doc["statement"]),
        unknowns=tuple(Unknown(u["name"], u["label"], u.get("nonnegative", True))
                       for u in doc["unknowns"]),
        modern_route=route,
        modes=modes,
        expected={k: _check_numeral(v, f"{pid} expected {k}") for k, v in doc["expected"].items()},
        procedure=procedure,
        inputs={k: _check_numeral(v, f"{pid} input {k}") for k, v in doc.get("inputs", {}).items()},
        expected_trace=tuple((label, numeral.value_of(text, 0))
                             for label, text in doc.get("expected_trace", ())),
        text_errors=tuple(TextError(t["line"], t["printed"],
                                    _check_numeral(t["corrected"], f"{pid} text error"),
                                    t.get("note", ""))
                          for t in doc.get("text_errors", ())),
        notes=tuple(doc.get("notes", ())),
        labels=dict(doc.get("labels", {})),
    )


@functools.lru_cache(maxsize=None)
def _load_all() -> dict[str, ProblemSpec]:
    problems = {}
    files = sorted(p for p in resources.files(__package__).joinpath("data").iterdir()
                   if p.name.endswith(".json"))
    for path in files:
        spec = problem_from_doc(json.loads(path.read_text(encoding="utf-8")))
        problems[spec.id] = spec
    return problems


def problem_ids() -> list[str]:
    """Tablet problems first, in tablet order, then the modern examples."""
    def key(pid):
        digits = pid.removeprefix("smt").removeprefix("modern")
        return (not pid.startswith("smt"), [int(x) for x in digits.split(".") if x])
    return sorted(_load_all(), key=key)


def get_problem(pid: str) -> ProblemSpec:
    try:
        return _load_all()[pid]
    except KeyError:
        raise UnknownProblem(f"unknown problem {pid!r}") from None


# running


@dataclass(frozen=True)
class Candidate:
    bindings: Mapping[str, Fraction]
    admissible: bool
    reason: str = ""


@dataclass(frozen=True)
class Run:
    problem: str
    mode: str
    bindings: Mapping[str, Fraction]
    trace: Trace
    candidates: tuple[Candidate, ...] = ()
    text_errors: tuple[TextError, ...] = ()
    details: Mapping[str, object] = field(default_factory=dict)

    def __iter__(self):
        # unpacks as (bindings, trace)
        return iter((self.bindings, self.trace))

    @property
    def rejected(self) -> tuple[Candidate, ...]:
        return tuple(c for c in self.candidates if not c.admissible)


def admissibility(spec: ProblemSpec, bindings: Mapping[str, Fraction]) -> tuple[bool, str]:
    """A candidate is admissible iff every nonnegative unknown it binds is >= 0."""
    for u in spec.unknowns:
        if u.nonnegative and u.name in bindings and bindings[u.name] < 0:
            return False, f"{u.label} {u.name} = {numeral.show(bindings[u.name])} is negative"
    return True, ""


def run_problem(pid: str, mode: str = SCRIBAL) -> Run:
    spec = get_problem(pid)
    if mode not in (SCRIBAL, MODERN):
        raise UnsupportedMode(f"unknown mode {mode!r}")
    if mode not in spec.modes:
        raise UnsupportedMode(f"{pid} has no {mode} route")
    if mode == SCRIBAL:
        trace = execute(spec.procedure, spec.inputs)
        ok, reason = admissibility(spec, trace.outputs)
        return Run(pid, mode, dict(trace.outputs), trace,
                   (Candidate(dict(trace.outputs), ok, reason),), spec.text_errors)

    from .routes import MODERN_ROUTES

    raw, trace, details = MODERN_ROUTES[pid](spec)
    candidates = []
    for bindings, reason in raw:
        if reason:
            candidates.append(Candidate(bindings, False, reason))
        else:
            ok, why = admissibility(spec, bindings)
            candidates.append(Candidate(bindings, ok, why))
    chosen = [c for c in candidates if c.admissible]
    bindings = dict(chosen[0].bindings) if chosen else {}
    return Run(pid, mode, bindings, trace, tuple(candidates), (), details)


# verification


@dataclass(frozen=True)
class EquationCheck:
    equation: Equation
    lhs: Fraction | None
    rhs: Fraction | None
    satisfied: bool
    reason: str = ""

    def __str__(self) -> str:
        if self.satisfied:
            return f"ok        {self.equation}"
        if self.lhs is None or self.rhs is None:
            return f"violated  {self.equation}: {self.reason}"
        return (f"violated  {self.equation}: left side {numeral.show(self.lhs)} "
                f"!= right side {numeral.show(self.rhs)}")


@dataclass(frozen=True)
class VerifyReport:
    problem: str
    checks: tuple[EquationCheck, ...]

    @property
    def satisfied(self) -> int:
        return sum(c.satisfied for c in self.checks)

    @property
    def passed(self) -> bool:
        return self.satisfied == len(self.checks)

    def summary(self) -> str:
        return f"{self.satisfied}/{len(self.checks)} equations satisfied"


def verify_solution(pid: str, bindings: Mapping[str, numeral.Numberish]) -> VerifyReport:
    spec = get_problem(pid)
    values = {k: numeral.exact(v) for k, v in bindings.items()}
    needed = set().union(*(variables(e.lhs) | variables(e.rhs) for e in spec.statement))
    missing = sorted(needed - values.keys())
    if missing:
        raise MissingBinding(f"{pid}: no value for {', '.join(missing)}")
    checks = []
    for eq in spec.statement:
        try:
            lhs, rhs = evaluate(eq.lhs, values), evaluate(eq.rhs, values)
        except NotPerfectSquare as err:
            checks.append(EquationCheck(eq, None, None, False, f"radicand not a perfect square: {err}"))
            continue
        checks.append(EquationCheck(eq, lhs, rhs, lhs == rhs))
    return VerifyReport(pid, tuple(checks))


# scribal / modern agreement


@dataclass(frozen=True)
class CrossCheck:
    problem: str
    scribal: Run
    modern: Run
    scribal_solutions: frozenset
    modern_solutions: frozenset

    @property
    def agree(self) -> bool:
        return self.scribal_solutions == self.modern_solutions

    def __str__(self) -> str:
        verdict = "agree" if self.agree else "DISAGREE"
        lines = [f"{self.problem}: scribal and modern routes {verdict}"]
        for sol in sorted(self.modern_solutions):
            lines.append("  admissible: " + ", ".join(f"{k} = {numeral.show(v)}" for k, v in sol))
        for c in self.modern.rejected:
            shown = ", ".join(f"{k} = {numeral.show(v)}" for k, v in c.bindings.items())
            lines.append(f"  rejected:   {shown} ({c.reason})")
        return "\n".join(lines)


def _solutions(spec: ProblemSpec, run: Run) -> frozenset:
    names = spec.unknown_names
    return frozenset(
        tuple((n, c.bindings[n]) for n in names if n in c.bindings)
        for c in run.candidates if c.admissible
    )


def cross_check(pid: str) -> CrossCheck:
    spec = get_problem(pid)
    scribal = run_problem(pid, SCRIBAL)
    modern = run_problem(pid, MODERN)
    return CrossCheck(pid, scribal, modern, _solutions(spec, scribal), _solutions(spec, modern))


# algebraic identities used by the scribes


def _identity_sides(name: str, x: Fraction, y: Fraction) -> tuple[Fraction, Fraction]:
    if name == "smt17-identity":
        return (x + y) ** 2 - (x * y + (x - y) ** 2), 3 * x * y
    if name == "smt19-identity":
        return (x**4 + x**2 * y**2 / 2) ** 2, x**6 * (x**2 + y**2) + x**4 * y**4 / 4
    if name == "square-difference":
        return (x + y) ** 2 - (x - y) ** 2, 4 * x * y
    raise ValueError(f"unknown identity {name!r}")


IDENTITIES = ("smt17-identity", "smt19-identity", "square-difference")


def identity_sides(name: str, x: numeral.Numberish, y: numeral.Numberish) -> tuple[Fraction, Fraction]:
    return _identity_sides(name, numeral.exact(x), numeral.exact(y))


def identity_check(name: str, x: numeral.Numberish, y: numeral.Numberish) -> bool:
    left, right = identity_sides(name, x, y)
    return left == right


__all__ = [
    "IDENTITIES", "MODERN", "SCRIBAL", "Candidate", "CrossCheck", "EquationCheck",
    "ProblemSpec", "Run", "TextError", "Unknown", "VerifyReport", "admissibility",
    "cross_check", "get_problem", "identity_check", "identity_sides", "problem_from_doc",
    "problem_ids", "run_problem", "to_text", "verify_solution",
]
