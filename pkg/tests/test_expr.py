from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from susa.errors import (
    CorpusFormatError,
    DivisionByZero,
    ExpressionSyntaxError,
    MissingBinding,
    NotPerfectSquare,
)
from susa.expr import (
    Add,
    Const,
    Mul,
    Pow,
    Sqrt,
    Sub,
    Var,
    equation_doc,
    equation_from_doc,
    evaluate,
    from_doc,
    parse_equation,
    parse_expression,
    to_doc,
    to_text,
    variables,
)


def ev(text, anchor=None):
    return evaluate(parse_expression(text, anchor))


def test_anchored_arithmetic():
    assert ev("0;30,50 - 0;27,30") == Fraction(1, 18)
    assert ev("1/3 + 1/3 + 1/3") == 1
    assert ev("sqrt(3,50,35,23,27,24,26,40)", anchor=0) == 3280000


def test_precedence_and_division():
    assert ev("2 + 3 * 4", 0) == 14
    assert ev("(2 + 3) * 4", 0) == 20
    assert ev("-2^2", 0) == -4
    assert ev("10 / 4", 0) == Fraction(5, 2)
    assert ev("2^-2", 0) == Fraction(1, 4)
    assert ev("7 - 2 - 1", 0) == 4


def test_anchor_applies_to_every_floating_numeral():
    assert ev("10", anchor=1) == 600
    assert ev("10 + 0;30", anchor=1) == Fraction(1201, 2)


@pytest.mark.parametrize("text,col", [
    ("3,20", 1),
    ("1 + 3;60", 5),
    ("2 +* 3", 4),
    ("(1/2", 5),
    ("1/2 $", 5),
    ("1/0", 1),
    ("x + 1/2", 1),
    ("1/2^1/2", 5),
])
def test_syntax_errors_report_column(text, col):
    anchor = None if text == "3,20" else 0
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expression(text, anchor)
    assert info.value.column == col
    assert f"column {col}" in str(info.value)


def test_division_by_zero_expression():
    with pytest.raises(DivisionByZero):
        ev("1 / (2 - 2)", 0)


def test_sqrt_requires_perfect_square():
    with pytest.raises(NotPerfectSquare):
        ev("sqrt(2)", 0)


def test_variables_and_bindings():
    node = parse_expression("x*y + (x - y)^2", allow_vars=True)
    assert variables(node) == {"x", "y"}
    assert evaluate(node, {"x": Fraction(2, 3), "y": Fraction(1, 3)}) == Fraction(1, 3)
    with pytest.raises(MissingBinding):
        evaluate(node, {"x": 1})


def test_document_roundtrip():
    node = parse_expression("x^3*sqrt(x^2 + y^2) - 1/2", allow_vars=True)
    assert from_doc(to_doc(node)) == node


def test_unknown_node_kind_rejected():
    with pytest.raises(CorpusFormatError):
        from_doc({"kind": "sin", "arg": {"kind": "const", "value": "1/1"}})
    with pytest.raises(CorpusFormatError):
        from_doc({"kind": "pow", "base": {"kind": "var", "name": "x"}, "exponent": 0.5})
    with pytest.raises(CorpusFormatError):
        from_doc({"kind": "sub", "args": [{"kind": "var", "name": "x"}]})


def test_equations():
    eq = parse_equation("x*y = 10", anchor=1)
    assert evaluate(eq.rhs) == 600
    assert str(eq) == "x*y = 10,0"
    assert equation_from_doc(equation_doc(eq)) == eq
    with pytest.raises(ExpressionSyntaxError):
        parse_equation("x + y")


def test_to_text():
    assert to_text(Sub(Var("x"), Add((Var("y"), Const(Fraction(1)))))) == "x - (y + 1)"
    assert to_text(Mul((Const(Fraction(1, 2)), Var("x")))) == "(0;30)*x"
    assert to_text(Pow(Sqrt(Var("x")), 2)) == "sqrt(x)^2"


leaf = st.one_of(
    st.builds(lambda n, d: Const(Fraction(n, d)), st.integers(-50, 50), st.integers(1, 12)),
    st.sampled_from([Var("x"), Var("y")]),
)
trees = st.recursive(leaf, lambda kids: st.one_of(
    st.builds(lambda a, b: Add((a, b)), kids, kids),
    st.builds(Sub, kids, kids),
    st.builds(lambda a, b: Mul((a, b)), kids, kids),
    st.builds(Pow, kids, st.integers(0, 3)),
), max_leaves=8)


@given(trees, st.fractions(max_denominator=20), st.fractions(max_denominator=20))
def test_text_rendering_reparses(node, x, y):
    x, y = Fraction(x).limit_denominator(20), Fraction(y).limit_denominator(20)
    text = to_text(node)
    again = parse_expression(text, anchor=0, allow_vars=True)
    env = {"x": x, "y": y}
    assert evaluate(again, env) == evaluate(node, env)
