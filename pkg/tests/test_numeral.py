import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from susa import numeral
from susa.errors import (
    DigitOutOfRange,
    DivisionByZero,
    EmptyInput,
    MalformedSeparator,
    NegativeResult,
    NonTerminating,
    NumeralSyntaxError,
)
from susa.numeral import FloatingNumeral, SexagesimalForm

from conftest import rationals, smooth_rationals
from oracles import sexagesimal_value


def test_parse_anchored():
    assert numeral.parse("0;6,40") == SexagesimalForm(1, (0,), (6, 40))
    assert numeral.to_exact(numeral.parse("0;6,40")) == Fraction(1, 9)


def test_parse_floating():
    assert numeral.parse("4,41,40") == FloatingNumeral((4, 41, 40))


def test_parse_canonicalizes():
    assert numeral.parse("0,5;30,0") == SexagesimalForm(1, (5,), (30,))
    assert numeral.parse("-0;0") == SexagesimalForm(1, (0,), ())
    assert str(numeral.parse("00;30")) == "0;30"


@pytest.mark.parametrize("text,err", [
    ("3;60", DigitOutOfRange),
    ("75", DigitOutOfRange),
    ("", EmptyInput),
    ("   ", EmptyInput),
    ("1;2;3", MalformedSeparator),
    ("1,,2", MalformedSeparator),
    ("1,", MalformedSeparator),
    (";30", MalformedSeparator),
    ("1;", MalformedSeparator),
    ("123", NumeralSyntaxError),
    ("1a", NumeralSyntaxError),
])
def test_parse_errors(text, err):
    with pytest.raises(err):
        numeral.parse(text)


@pytest.mark.parametrize("text,value", [
    ("0;30", Fraction(1, 2)),
    ("0;0,2,15", Fraction(1, 1600)),
    ("1;1,40", Fraction(37, 36)),
    ("0;15,50,41,40", Fraction(1369, 5184)),
    ("-0;10", Fraction(-1, 6)),
])
def test_to_exact(text, value):
    assert numeral.to_exact(numeral.parse(text)) == value


def test_to_exact_rejects_floating():
    with pytest.raises(TypeError):
        numeral.to_exact(numeral.parse("2,10"))


def test_anchor_examples():
    assert numeral.anchor(FloatingNumeral((10,)), 1) == 600
    assert numeral.anchor(FloatingNumeral((4, 41, 40)), 0) == 16900
    assert numeral.anchor(FloatingNumeral((0,)), 5) == 0
    assert numeral.anchor(numeral.parse("2,10"), 0) == 130
    assert numeral.anchor(numeral.parse("2,10"), -1) == Fraction(13, 6)


def test_value_of_requires_anchor_for_floating():
    with pytest.raises(NumeralSyntaxError):
        numeral.value_of("2,10")
    assert numeral.value_of("2,10", 0) == 130


@pytest.mark.parametrize("value,text", [
    (130, "2,10"),
    (Fraction(1, 9), "0;6,40"),
    (0, "0"),
    (16800, "4,40,0"),
    (1440000, "6,40,0,0"),
    (Fraction(-1, 6), "-0;10"),
    (Fraction(37, 36), "1;1,40"),
    (3200000**2, "3,39,28,43,27,24,26,40"),
])
def test_format_examples(value, text):
    assert numeral.format(value) == text


def test_format_non_terminating():
    with pytest.raises(NonTerminating):
        numeral.format(Fraction(1, 7))


def test_arithmetic_examples():
    assert numeral.format(numeral.halve(numeral.exact("1;6,40"))) == "0;33,20"
    assert numeral.format(numeral.square(10)) == "1,40"
    assert numeral.format(numeral.mul(28, 600)) == "4,40,0"
    assert numeral.format(numeral.add(16800, 100)) == "4,41,40"
    assert numeral.neg(5) == -5
    assert numeral.div(1, 3) == Fraction(1, 3)
    with pytest.raises(DivisionByZero):
        numeral.div(1, 0)


def test_checked_sub():
    assert numeral.checked_sub(35, 5) == 30
    assert numeral.checked_sub(7, 7) == 0
    with pytest.raises(NegativeResult):
        numeral.checked_sub(5, 7)


def test_exact_coercion():
    assert numeral.exact("7/3") == Fraction(7, 3)
    assert numeral.exact("-0;30") == Fraction(-1, 2)
    with pytest.raises(NumeralSyntaxError):
        numeral.exact("2,10")
    with pytest.raises(DivisionByZero):
        numeral.exact("1/0")
    with pytest.raises(TypeError):
        numeral.exact(True)


def test_show_falls_back_to_rational():
    assert numeral.show(Fraction(1, 28)) == "1/28"
    assert numeral.show(Fraction(1, 2)) == "0;30"


@given(smooth_rationals())
def test_roundtrip(v):
    # text without ';' is an integer, so it is read back at the units place
    text = numeral.format(v)
    assert numeral.value_of(text, 0) == v
    assert sexagesimal_value(text) == v
    if ";" in text:
        assert numeral.to_exact(numeral.parse(text)) == v


@given(smooth_rationals())
def test_format_is_canonical(v):
    form = numeral.to_form(v)
    assert all(0 <= d < 60 for d in form.integer_digits + form.fractional_digits)
    assert form.integer_digits == (0,) or form.integer_digits[0] != 0
    assert not form.fractional_digits or form.fractional_digits[-1] != 0
    assert str(numeral.parse(numeral.format(v))) == numeral.format(v)


@given(st.lists(st.integers(0, 59), min_size=1, max_size=8), st.integers(-6, 6))
def test_anchor_scaling(digits, k):
    while len(digits) > 1 and digits[0] == 0:
        digits.pop(0)
    num = FloatingNumeral(tuple(digits))
    assert numeral.anchor(num, k) == numeral.anchor(num, 0) * Fraction(60) ** k


@given(rationals(), rationals(), rationals())
def test_field_laws(a, b, c):
    assert numeral.add(a, b) == numeral.add(b, a)
    assert numeral.mul(a, b) == numeral.mul(b, a)
    assert numeral.add(numeral.add(a, b), c) == numeral.add(a, numeral.add(b, c))
    assert numeral.mul(numeral.mul(a, b), c) == numeral.mul(a, numeral.mul(b, c))
    assert numeral.mul(a, numeral.add(b, c)) == numeral.add(numeral.mul(a, b), numeral.mul(a, c))
    if b:
        assert numeral.div(numeral.mul(a, b), b) == a


def test_field_laws_seeded_sweep():
    rng = random.Random(7)

    def draw():
        return Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))

    for _ in range(10**4):
        a, b, c = draw(), draw(), draw()
        assert numeral.add(a, b) == numeral.add(b, a)
        assert numeral.mul(a, b) == numeral.mul(b, a)
        assert numeral.add(numeral.add(a, b), c) == numeral.add(a, numeral.add(b, c))
        assert numeral.mul(numeral.mul(a, b), c) == numeral.mul(a, numeral.mul(b, c))
        assert numeral.mul(a, numeral.add(b, c)) == numeral.add(numeral.mul(a, b), numeral.mul(a, c))
        if b:
            assert numeral.div(numeral.mul(a, b), b) == a


@given(rationals(), rationals())
def test_checked_sub_property(a, b):
    if a >= b:
        assert numeral.add(numeral.checked_sub(a, b), b) == a
    else:
        with pytest.raises(NegativeResult):
            numeral.checked_sub(a, b)
