"""Command-line front end: ``susa eval|factor|recip|table|problem``.

Results go to stdout, diagnostics to stderr.  Exit status is 0 on success,
1 for a typed computation error and 2 for usage errors and unknown problems.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import corpus, numeral, trace
from .errors import NonTerminating, SusaError, UnknownProblem
from .expr import evaluate, parse_expression
from .numtheory import factor, reciprocal, reciprocal_table

FORMATS = ("sex", "rat", "both")

# values shown as p/q because they have no finite sexagesimal form
_fallbacks: list[str] = []


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _render(value: Fraction, fmt: str, *, strict: bool = False) -> str:
    """Value text in the requested format.

    Irregular denominators have no sexagesimal form; unless ``strict`` they
    fall back to ``p/q`` with a warning on stderr.
    """
    if fmt == "rat":
        return numeral.format_rational(value)
    try:
        sex = numeral.format(value)
    except NonTerminating:
        if strict:
            raise
        text = numeral.format_rational(value)
        if text not in _fallbacks:
            _fallbacks.append(text)
        return text
    if fmt == "both":
        return f"{sex}  ({numeral.format_rational(value)})"
    return sex


def _integer_arg(text: str, anchor: int | None) -> int:
    """Integer from a decimal literal or a sexagesimal numeral (anchor 0 by default)."""
    if text.isdigit():
        value = Fraction(int(text))
    else:
        value = numeral.value_of(text, 0 if anchor is None else anchor)
    if value.denominator != 1:
        raise UsageError(f"{text!r} is not an integer")
    return int(value)


def _number_arg(text: str, anchor: int | None) -> Fraction:
    node = parse_expression(text, anchor)
    return evaluate(node)


def _emit_json(doc) -> None:
    sys.stdout.write(trace.dumps(doc))


def cmd_eval(args) -> int:
    value = evaluate(parse_expression(args.expr, args.anchor))
    if args.json:
        _emit_json({"expression": args.expr, "value": trace.numeral_doc(value)})
        if not numeral.is_terminating(value) and args.format != "rat":
            raise NonTerminating(f"{numeral.format_rational(value)} has no finite sexagesimal form")
        return 0
    print(_render(value, args.format))
    return 0


def cmd_factor(args) -> int:
    n = _integer_arg(args.n, args.anchor)
    f = factor(n)
    if args.json:
        _emit_json({"n": n, "factors": [[p, e] for p, e in f.factors]})
    else:
        print(f)
    return 0


def cmd_recip(args) -> int:
    value = reciprocal(_number_arg(args.n, args.anchor))
    if args.json:
        _emit_json({"reciprocal": trace.numeral_doc(value)})
    else:
        print(_render(value, args.format))
    return 0


def cmd_table(args) -> int:
    limit = _integer_arg(args.limit, args.anchor)
    rows = reciprocal_table(limit)
    if args.json:
        _emit_json([[n, trace.numeral_doc(r)] for n, r in rows])
    else:
        for n, r in rows:
            print(f"{numeral.show(n) if args.format == 'sex' else n}  {_render(r, args.format)}")
    return 0


def _format_entry(e: trace.TraceEntry, fmt: str) -> str:
    ops = ", ".join(_render(v, fmt) for v in e.operands)
    reg = f"[{e.register}]" if e.register and e.opcode in ("Hold", "Recall") else ""
    head = f"{e.line or '-':<5}{e.opcode}{reg}({ops}) → {_render(e.result, fmt)}"
    extras = []
    if e.label:
        extras.append(e.label)
    if e.reconstructed:
        extras.append("reconstructed")
    if e.sic:
        extras.append(f"tablet has {e.sic}")
    return head + (f"    [{'; '.join(extras)}]" if extras else "")


def _run_doc(run: corpus.Run) -> dict:
    doc = {"problem": run.problem, "mode": run.mode}
    doc.update(trace.trace_doc(run.trace))
    doc["solution"] = {k: trace.numeral_doc(v) for k, v in run.bindings.items()}
    if run.rejected:
        doc["rejected"] = [
            {"bindings": {k: trace.numeral_doc(v) for k, v in c.bindings.items()},
             "reason": c.reason}
            for c in run.rejected
        ]
    if run.text_errors:
        doc["text_errors"] = [
            {"line": t.line, "printed": t.printed,
             "corrected": trace.numeral_doc(t.corrected), "note": t.note}
            for t in run.text_errors
        ]
    return doc


def cmd_problem_list(args) -> int:
    ids = corpus.problem_ids()
    if args.json:
        _emit_json([{"id": pid, "title": corpus.get_problem(pid).title,
                     "modes": list(corpus.get_problem(pid).modes)} for pid in ids])
        return 0
    for pid in ids:
        spec = corpus.get_problem(pid)
        print(f"{pid:<10} {'/'.join(spec.modes):<15} {spec.title}")
    return 0


def cmd_problem_run(args) -> int:
    spec = corpus.get_problem(args.id)
    mode = args.mode or spec.modes[0]
    run = corpus.run_problem(args.id, mode)
    if args.json:
        _emit_json(_run_doc(run))
        return 0
    if args.trace:
        for e in run.trace.entries:
            print(_format_entry(e, args.format))
        for note in run.trace.notes:
            print(f"note: {note}")
    for c in run.rejected:
        shown = ", ".join(f"{k} = {_render(v, args.format)}" for k, v in c.bindings.items())
        print(f"rejected: {shown} ({c.reason})")
    for t in run.text_errors:
        print(f"text error {t.line}: tablet has {t.printed}, "
              f"corrected {_render(t.corrected, args.format)}")
    if not run.bindings:
        print("no admissible solution", file=sys.stderr)
        return 1
    for name, value in run.bindings.items():
        print(f"{spec.label(name)} = {_render(value, args.format)}")
    return 0


def cmd_problem_verify(args) -> int:
    spec = corpus.get_problem(args.id)
    if args.values:
        bindings = {}
        for item in args.values:
            name, sep, text = item.partition("=")
            if not sep:
                raise UsageError(f"expected name=value, got {item!r}")
            bindings[name.strip()] = _number_arg(text.strip(), args.anchor)
    else:
        bindings = dict(spec.expected)
    report = corpus.verify_solution(args.id, bindings)
    if args.json:
        _emit_json({
            "problem": args.id,
            "bindings": {k: trace.numeral_doc(v) for k, v in sorted(bindings.items())},
            "checks": [{"equation": str(c.equation), "satisfied": c.satisfied,
                        **({"reason": c.reason} if c.reason else {})} for c in report.checks],
            "satisfied": report.satisfied,
            "total": len(report.checks),
        })
    else:
        for c in report.checks:
            print(c)
        print(report.summary())
    return 0


def cmd_problem_check(args) -> int:
    result = corpus.cross_check(args.id)
    print(result)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="sex",
                        help="sexagesimal, p/q, or both (default: sex)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--anchor", type=int, default=None,
                        help="place exponent of the last digit of comma-only numerals")

    parser = _Parser(prog="susa", description="Exact sexagesimal arithmetic and the Susa problems.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("factor", parents=[common], help="prime factorization")
    p.add_argument("n")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("recip", parents=[common], help="reciprocal of a regular number")
    p.add_argument("n")
    p.set_defaults(func=cmd_recip)

    p = sub.add_parser("table", parents=[common], help="reciprocal table of regular numbers")
    p.add_argument("limit")
    p.set_defaults(func=cmd_table)

    prob = sub.add_parser("problem", help="corpus problems")
    psub = prob.add_subparsers(dest="action", required=True, parser_class=_Parser)

    p = psub.add_parser("list", parents=[common])
    p.set_defaults(func=cmd_problem_list)

    p = psub.add_parser("run", parents=[common])
    p.add_argument("id")
    p.add_argument("--mode", choices=(corpus.SCRIBAL, corpus.MODERN), default=None)
    p.add_argument("--trace", action="store_true", help="print every step")
    p.set_defaults(func=cmd_problem_run)

    p = psub.add_parser("verify", parents=[common])
    p.add_argument("id")
    p.add_argument("values", nargs="*", metavar="NAME=VALUE",
                   help="bindings to check (default: the expected answer)")
    p.set_defaults(func=cmd_problem_verify)

    p = psub.add_parser("check", parents=[common], help="cross-check scribal and modern routes")
    p.add_argument("id")
    p.set_defaults(func=cmd_problem_check)

    return parser


def _warn_fallbacks() -> None:
    if _fallbacks:
        print(f"warning: no finite sexagesimal form, shown as p/q: {', '.join(_fallbacks)}",
              file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    _fallbacks.clear()
    try:
        args = build_parser().parse_args(argv)
        status = args.func(args)
        _warn_fallbacks()
        return status
    except UsageError as err:
        print(err, file=sys.stderr)
        return 2
    except UnknownProblem as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except SusaError as err:
        print(f"error: {type(err).__name__}: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
