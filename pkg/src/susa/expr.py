"""Expression trees over exact numbers, plus a small infix parser.

Trees have seven node kinds: const, var, add, sub, mul, pow, sqrt.  Division
and negation are spelled with those (``a/b`` is ``a * b**-1``), so stored
problem files never need anything else and loaders reject other kinds.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from . import numeral
from .errors import (
    CorpusFormatError,
    DivisionByZero,
    ExpressionSyntaxError,
    MissingBinding,
    NumeralSyntaxError,
)
from .numtheory import sqrt_exact

NODE_KINDS = ("const", "var", "add", "sub", "mul", "pow", "sqrt")


@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Add:
    args: tuple


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    args: tuple


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Sqrt:
    arg: object


Node = Union[Const, Var, Add, Sub, Mul, Pow, Sqrt]


def evaluate(node: Node, bindings: Mapping[str, Fraction] | None = None) -> Fraction:
    """Exact value; a sqrt whose radicand is not a rational square raises NotPerfectSquare."""
    bindings = bindings or {}
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Var):
        if node.name not in bindings:
            raise MissingBinding(f"no value bound for {node.name!r}")
        return numeral.exact(bindings[node.name])
    if isinstance(node, Add):
        return sum((evaluate(a, bindings) for a in node.args), Fraction(0))
    if isinstance(node, Sub):
        return evaluate(node.left, bindings) - evaluate(node.right, bindings)
    if isinstance(node, Mul):
        out = Fraction(1)
        for a in node.args:
            out *= evaluate(a, bindings)
        return out
    if isinstance(node, Pow):
        base = evaluate(node.base, bindings)
        if base == 0 and node.exponent < 0:
            raise DivisionByZero("zero raised to a negative power")
        return base**node.exponent
    if isinstance(node, Sqrt):
        return sqrt_exact(evaluate(node.arg, bindings))
    raise TypeError(f"not an expression node: {node!r}")


def variables(node: Node) -> set[str]:
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, (Add, Mul)):
        return set().union(*(variables(a) for a in node.args))
    if isinstance(node, Sub):
        return variables(node.left) | variables(node.right)
    if isinstance(node, Pow):
        return variables(node.base)
    if isinstance(node, Sqrt):
        return variables(node.arg)
    return set()


def to_doc(node: Node) -> dict:
    if isinstance(node, Const):
        return {"kind": "const", "value": numeral.format_rational(node.value)}
    if isinstance(node, Var):
        return {"kind": "var", "name": node.name}
    if isinstance(node, Add):
        return {"kind": "add", "args": [to_doc(a) for a in node.args]}
    if isinstance(node, Mul):
        return {"kind": "mul", "args": [to_doc(a) for a in node.args]}
    if isinstance(node, Sub):
        return {"kind": "sub", "args": [to_doc(node.left), to_doc(node.right)]}
    if isinstance(node, Pow):
        return {"kind": "pow", "base": to_doc(node.base), "exponent": node.exponent}
    if isinstance(node, Sqrt):
        return {"kind": "sqrt", "arg": to_doc(node.arg)}
    raise TypeError(f"not an expression node: {node!r}")


def from_doc(doc: Mapping) -> Node:
    kind = doc.get("kind") if isinstance(doc, Mapping) else None
    if kind not in NODE_KINDS:
        raise CorpusFormatError(f"unknown expression node kind {kind!r}")
    if kind == "const":
        return Const(numeral.exact(doc["value"]))
    if kind == "var":
        return Var(doc["name"])
    if kind == "sqrt":
        return Sqrt(from_doc(doc["arg"]))
    if kind == "pow":
        exponent = doc["exponent"]
        if isinstance(exponent, bool) or not isinstance(exponent, int):
            raise CorpusFormatError("pow exponent must be an integer")
        return Pow(from_doc(doc["base"]), exponent)
    args = tuple(from_doc(a) for a in doc["args"])
    if kind == "sub":
        if len(args) != 2:
            raise CorpusFormatError("sub takes exactly two arguments")
        return Sub(*args)
    if len(args) < 2:
        raise CorpusFormatError(f"{kind} needs at least two arguments")
    return Add(args) if kind == "add" else Mul(args)


_PREC = {Add: 1, Sub: 1, Mul: 2, Pow: 3}


def to_text(node: Node) -> str:
    """Readable infix rendering with sexagesimal constants where they exist."""
    def wrap(child, prec):
        text = to_text(child)
        return f"({text})" if _PREC.get(type(child), 9) < prec else text

    if isinstance(node, Const):
        text = numeral.show(node.value)
        return f"({text})" if node.value < 0 or ";" in text else text
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Add):
        return " + ".join(wrap(a, 1) for a in node.args)
    if isinstance(node, Sub):
        return f"{wrap(node.left, 1)} - {wrap(node.right, 2)}"
    if isinstance(node, Mul):
        return "*".join(wrap(a, 2) for a in node.args)
    if isinstance(node, Pow):
        return f"{wrap(node.base, 4)}^{node.exponent}"
    if isinstance(node, Sqrt):
        return f"sqrt({to_text(node.arg)})"
    raise TypeError(f"not an expression node: {node!r}")


# infix parser

_TOKEN = re.compile(r"""
    (?P<space>\s+)
  | (?P<rational>[0-9]+/[0-9]+(?![0-9,;]))
  | (?P<number>[0-9][0-9,;]*)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
""", re.VERBOSE)


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", pos + 1)
        if m.lastgroup != "space":
            out.append((m.lastgroup, m.group(), pos + 1))
        pos = m.end()
    out.append(("end", "", len(text) + 1))
    return out


class _Parser:
    def __init__(self, text: str, anchor: int | None, allow_vars: bool):
        self.tokens = _tokenize(text)
        self.i = 0
        self.anchor = anchor
        self.allow_vars = allow_vars

    def peek(self):
        return self.tokens[self.i]

    def take(self, value=None):
        tok = self.peek()
        if value is not None and tok[1] != value:
            found = tok[1] or "end of input"
            raise ExpressionSyntaxError(f"expected {value!r}, found {found!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Node:
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExpressionSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            right = self.term()
            if op == "+":
                node = Add(node.args + (right,)) if isinstance(node, Add) else Add((node, right))
            else:
                node = Sub(node, right)
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            right = self.unary()
            if op == "/":
                right = Pow(right, -1)
            node = Mul(node.args + (right,)) if isinstance(node, Mul) else Mul((node, right))
        return node

    def unary(self) -> Node:
        if self.peek()[1] == "-":
            self.take()
            inner = self.unary()
            if isinstance(inner, Const):
                return Const(-inner.value)
            return Mul((Const(Fraction(-1)), inner))
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[1] == "-":
                self.take()
                sign = -1
            kind, text, col = self.take()
            if kind not in ("number",) or not text.isdigit():
                raise ExpressionSyntaxError("exponent must be a decimal integer", col)
            return Pow(base, sign * int(text))
        return base

    def atom(self) -> Node:
        kind, text, col = self.take()
        if kind == "rational":
            return Const(Fraction(text)) if not text.endswith("/0") else self._zero(col)
        if kind == "number":
            try:
                form = numeral.parse(text)
                if isinstance(form, numeral.FloatingNumeral):
                    if self.anchor is None:
                        raise ExpressionSyntaxError(
                            f"floating numeral {text!r} needs an anchor", col)
                    return Const(numeral.anchor(form, self.anchor))
                return Const(numeral.to_exact(form))
            except NumeralSyntaxError as err:
                raise ExpressionSyntaxError(err.message, col) from None
        if kind == "name":
            if text == "sqrt":
                self.take("(")
                inner = self.expr()
                self.take(")")
                return Sqrt(inner)
            if not self.allow_vars:
                raise ExpressionSyntaxError(f"unknown name {text!r}", col)
            return Var(text)
        if text == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise ExpressionSyntaxError(f"unexpected {text or 'end of input'!r}", col)

    def _zero(self, col):
        raise ExpressionSyntaxError("zero denominator in rational literal", col)


def parse_expression(text: str, anchor: int | None = None, allow_vars: bool = False) -> Node:
    """Parse ``+ - * / ^``, ``sqrt()``, parentheses, numerals and ``p/q`` literals.

    Comma-only numerals are floating and need ``anchor`` (the place of the
    last digit).  Names other than ``sqrt`` are variables when allowed.
    """
    return _Parser(text, anchor, allow_vars).parse()


@dataclass(frozen=True)
class Equation:
    lhs: Node
    rhs: Node
    line: str | None = None

    def __str__(self) -> str:
        return f"{to_text(self.lhs)} = {to_text(self.rhs)}"


def parse_equation(text: str, anchor: int | None = 0, line: str | None = None) -> Equation:
    left, sep, right = text.partition("=")
    if not sep:
        raise ExpressionSyntaxError("equation needs '='", len(text) + 1)
    return Equation(parse_expression(left, anchor, allow_vars=True),
                    parse_expression(right, anchor, allow_vars=True), line)


def equation_doc(eq: Equation) -> dict:
    doc = {"text": str(eq), "lhs": to_doc(eq.lhs), "rhs": to_doc(eq.rhs)}
    if eq.line is not None:
        doc["line"] = eq.line
    return doc


def equation_from_doc(doc: Mapping) -> Equation:
    return Equation(from_doc(doc["lhs"]), from_doc(doc["rhs"]), doc.get("line"))
