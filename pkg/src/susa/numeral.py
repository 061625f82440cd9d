"""Exact rationals and their base-60 textual notation.

Numerals are written the way modern editions print cuneiform numbers:
comma-separated digit groups, with ``;`` separating the integer places from
the fractional places (``0;6,40`` is 1/9).  A numeral without ``;`` carries
no absolute scale and parses to a :class:`FloatingNumeral`; it only becomes a
number once :func:`anchor` fixes the place of its last digit.

``ExactNumber`` is :class:`fractions.Fraction`, which already keeps its
numerator and denominator coprime with a positive denominator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import (
    DigitOutOfRange,
    DivisionByZero,
    EmptyInput,
    MalformedSeparator,
    NegativeResult,
    NonTerminating,
    NumeralSyntaxError,
)

ExactNumber = Fraction
Numberish = Union[int, Fraction, str]

BASE = 60

_GROUP = re.compile(r"[0-9]{1,2}")


@dataclass(frozen=True)
class SexagesimalForm:
    """Anchored numeral: integer places and fractional places, most significant first."""

    sign: int
    integer_digits: tuple[int, ...]
    fractional_digits: tuple[int, ...] = ()

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        digits = self.integer_digits + self.fractional_digits
        if not self.integer_digits or any(not 0 <= d < BASE for d in digits):
            raise ValueError(f"invalid digits {digits!r}")
        if len(self.integer_digits) > 1 and self.integer_digits[0] == 0:
            raise ValueError("leading zero in integer digits")
        if self.fractional_digits and self.fractional_digits[-1] == 0:
            raise ValueError("trailing zero in fractional digits")

    def __str__(self) -> str:
        text = ",".join(map(str, self.integer_digits))
        if self.fractional_digits:
            text += ";" + ",".join(map(str, self.fractional_digits))
        return ("-" if self.sign < 0 and text != "0" else "") + text


@dataclass(frozen=True)
class FloatingNumeral:
    """A digit string with no absolute place: it stands for D * 60**k for any k."""

    digits: tuple[int, ...]
    negative: bool = False

    def __post_init__(self):
        if not self.digits or any(not 0 <= d < BASE for d in self.digits):
            raise ValueError(f"invalid digits {self.digits!r}")
        if len(self.digits) > 1 and self.digits[0] == 0:
            raise ValueError("leading zero digit")

    def __str__(self) -> str:
        return ("-" if self.negative else "") + ",".join(map(str, self.digits))


def _groups(text: str, whole: str) -> list[int]:
    out = []
    for group in text.split(","):
        if group == "":
            raise MalformedSeparator(f"empty digit group in {whole!r}")
        if not _GROUP.fullmatch(group):
            if group.isdigit():
                raise DigitOutOfRange(f"{group} is not a base-60 digit in {whole!r}")
            raise NumeralSyntaxError(f"bad digit group {group!r} in {whole!r}")
        value = int(group)
        if value >= BASE:
            raise DigitOutOfRange(f"{group} is not a base-60 digit in {whole!r}")
        out.append(value)
    return out


def parse(text: str) -> SexagesimalForm | FloatingNumeral:
    """Parse numeral text.  ``;`` anchors the number; without it the result floats."""
    if text is None or not text.strip():
        raise EmptyInput("empty numeral")
    whole = text.strip()
    body = whole
    negative = body.startswith("-")
    if negative:
        body = body[1:]
    if body.count(";") > 1:
        raise MalformedSeparator(f"more than one ';' in {whole!r}")

    if ";" not in body:
        digits = _groups(body, whole)
        while len(digits) > 1 and digits[0] == 0:
            digits.pop(0)
        return FloatingNumeral(tuple(digits), negative=negative and digits != [0])

    int_text, frac_text = body.split(";")
    int_digits = _groups(int_text, whole)
    frac_digits = _groups(frac_text, whole)
    while len(int_digits) > 1 and int_digits[0] == 0:
        int_digits.pop(0)
    while frac_digits and frac_digits[-1] == 0:
        frac_digits.pop()
    is_zero = int_digits == [0] and not frac_digits
    sign = -1 if negative and not is_zero else 1
    return SexagesimalForm(sign, tuple(int_digits), tuple(frac_digits))


def to_exact(form: SexagesimalForm) -> Fraction:
    if isinstance(form, FloatingNumeral):
        raise TypeError("floating numeral has no value until anchored; use anchor()")
    whole = 0
    for d in form.integer_digits:
        whole = whole * BASE + d
    frac = 0
    for d in form.fractional_digits:
        frac = frac * BASE + d
    value = whole + Fraction(frac, BASE ** len(form.fractional_digits))
    return form.sign * value


def anchor(num: FloatingNumeral, exponent: int) -> Fraction:
    """Value of ``num`` when its last digit sits in the ``60**exponent`` place."""
    whole = 0
    for d in num.digits:
        whole = whole * BASE + d
    value = whole * Fraction(BASE) ** exponent
    return -value if num.negative else value


def value_of(text: str, anchor_exponent: int | None = None) -> Fraction:
    """Parse and evaluate numeral text; floating numerals need ``anchor_exponent``."""
    form = parse(text)
    if isinstance(form, FloatingNumeral):
        if anchor_exponent is None:
            raise NumeralSyntaxError(f"{text!r} is a floating numeral; an anchor is required")
        return anchor(form, anchor_exponent)
    return to_exact(form)


def exact(x: Numberish) -> Fraction:
    """Coerce ints, rationals, anchored numerals (``"0;30"``) and ``"p/q"`` text."""
    if isinstance(x, bool):
        raise TypeError("bool is not a number here")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if ";" in s:
            return value_of(s)
        if re.fullmatch(r"-?[0-9]+(/[0-9]+)?", s):
            try:
                return Fraction(s)
            except ZeroDivisionError:
                raise DivisionByZero(f"zero denominator in {s!r}") from None
        raise NumeralSyntaxError(f"cannot read {x!r} as an exact number")
    raise TypeError(f"cannot convert {type(x).__name__} to an exact number")


def is_terminating(value: Fraction) -> bool:
    """True when the value has a finite base-60 expansion."""
    q = Fraction(value).denominator
    for p in (2, 3, 5):
        while q % p == 0:
            q //= p
    return q == 1


def to_form(value: Numberish) -> SexagesimalForm:
    value = exact(value)
    if not is_terminating(value):
        raise NonTerminating(f"{value} has no finite sexagesimal expansion")
    sign = -1 if value < 0 else 1
    value = abs(value)
    whole, rest = divmod(value.numerator, value.denominator)
    int_digits = []
    while whole:
        whole, d = divmod(whole, BASE)
        int_digits.append(d)
    int_digits.reverse()
    frac_digits = []
    rest = Fraction(rest, value.denominator)
    while rest:
        rest *= BASE
        d = rest.numerator // rest.denominator
        frac_digits.append(d)
        rest -= d
    return SexagesimalForm(sign, tuple(int_digits) or (0,), tuple(frac_digits))


def format(value: Numberish) -> str:  # noqa: A001 - module-level API name
    """Canonical sexagesimal text, e.g. ``130 -> "2,10"`` and ``1/9 -> "0;6,40"``."""
    return str(to_form(value))


def format_rational(value: Numberish) -> str:
    value = exact(value)
    return f"{value.numerator}/{value.denominator}"


# arithmetic


def add(a: Numberish, b: Numberish) -> Fraction:
    return exact(a) + exact(b)


def mul(a: Numberish, b: Numberish) -> Fraction:
    return exact(a) * exact(b)


def div(a: Numberish, b: Numberish) -> Fraction:
    b = exact(b)
    if b == 0:
        raise DivisionByZero("division by zero")
    return exact(a) / b


def neg(a: Numberish) -> Fraction:
    return -exact(a)


def halve(a: Numberish) -> Fraction:
    return exact(a) / 2


def square(a: Numberish) -> Fraction:
    a = exact(a)
    return a * a


def checked_sub(a: Numberish, b: Numberish) -> Fraction:
    """``a - b`` for ``a >= b``; the scribes only ever took a smaller number from a larger."""
    a, b = exact(a), exact(b)
    if b > a:
        raise NegativeResult(f"cannot subtract {_show(b)} from {_show(a)}")
    return a - b


def _show(value: Fraction) -> str:
    return format(value) if is_terminating(value) else format_rational(value)


def show(value: Numberish) -> str:
    """Sexagesimal text when it exists, ``p/q`` otherwise."""
    return _show(exact(value))
