"""Exact solvers: completing the square, row reduction, symmetric systems,
rational roots of polynomials.

Quadratics are kept in the Babylonian normal form ``a*t**2 + b*t = c``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import NegativeDiscriminant, NegativeResult, NotPerfectSquare
from .numeral import Numberish, checked_sub, exact
from .numtheory import factor, reciprocal, sqrt_exact
from .trace import Recorder, Trace

SCRIBAL = "scribal"
MODERN = "modern"


@dataclass(frozen=True)
class Quadratic:
    """``a*t**2 + b*t = c`` with ``a != 0``."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, exact(getattr(self, name)))
        if self.a == 0:
            raise ValueError("leading coefficient must be nonzero")

    @classmethod
    def from_zero_form(cls, a: Numberish, b: Numberish, c0: Numberish) -> "Quadratic":
        """Build from ``a*t**2 + b*t + c0 = 0``."""
        return cls(a, b, -exact(c0))

    def residual(self, t: Numberish) -> Fraction:
        t = exact(t)
        return self.a * t * t + self.b * t - self.c


def complete_square(q: Quadratic, mode: str = MODERN) -> tuple[list[Fraction], Trace]:
    """Solve by scaling ``w = a*t`` and completing the square.

    Scribal mode works on magnitudes only, takes every difference as
    larger minus smaller and insists on a perfect-square discriminant.
    Modern mode returns every rational root; an irrational or negative
    discriminant yields no roots and a note in the trace.
    """
    if mode == SCRIBAL:
        return _scribal_square(q)
    if mode == MODERN:
        return _modern_square(q)
    raise ValueError(f"unknown mode {mode!r}")


def _scribal_square(q: Quadratic):
    a, b, c = q.a, q.b, q.c
    rec = Recorder("complete_square/scribal", {"a": a, "b": b, "c": c})
    if a < 0:
        a, b, c = -a, -b, -c
        rec.note("coefficients negated to make the leading coefficient positive")
    p = abs(b)
    ac = a * c
    scaled = rec.op("Multiply", (a, abs(c)), abs(ac), "scaled_c")
    half = rec.op("Halve", (p,), p / 2, "half")
    sq = rec.op("Square", (half,), half * half, "square")
    if ac >= 0:
        total = rec.op("Add", (sq, scaled), sq + scaled, "sum")
        root = rec.op("SquareRoot", (total,), sqrt_exact(total), "sqrt")
        if b < 0:
            w = rec.op("Add", (root, half), root + half, "w")
        else:
            w = rec.op("Subtract", (root, half), checked_sub(root, half), "w")
        r = rec.op("Reciprocal", (a,), reciprocal(a), "reciprocal_a")
        t = rec.op("Multiply", (r, w), r * w, "root")
        return [t], rec.finish({"root": t})

    # w**2 + C = B*w: both roots are positive when B > 0
    if b >= 0:
        raise NegativeResult("equation has no positive root")
    diff = rec.op("Subtract", (sq, scaled), checked_sub(sq, scaled), "difference")
    root = rec.op("SquareRoot", (diff,), sqrt_exact(diff), "sqrt")
    w1 = rec.op("Subtract", (half, root), checked_sub(half, root), "w_subtractive")
    w2 = rec.op("Add", (half, root), half + root, "w_additive")
    r = rec.op("Reciprocal", (a,), reciprocal(a), "reciprocal_a")
    t1 = rec.op("Multiply", (r, w1), r * w1, "root_subtractive")
    t2 = rec.op("Multiply", (r, w2), r * w2, "root_additive")
    roots = [t1] if t1 == t2 else [t1, t2]
    return roots, rec.finish({"root_subtractive": t1, "root_additive": t2})


def _modern_square(q: Quadratic):
    a, b, c = q.a, q.b, q.c
    rec = Recorder("complete_square/modern", {"a": a, "b": b, "c": c})
    ac = rec.op("Multiply", (a, c), a * c, "scaled_c")
    half = rec.op("Halve", (b,), b / 2, "half")
    sq = rec.op("Square", (half,), half * half, "square")
    disc = rec.op("Add", (sq, ac), sq + ac, "discriminant")
    if disc < 0:
        rec.note(f"negative discriminant {disc}: no real root")
        return [], rec.finish({})
    try:
        root = sqrt_exact(disc)
    except NotPerfectSquare:
        rec.note(f"no rational root: discriminant {disc} is not a rational square")
        return [], rec.finish({})
    rec.op("SquareRoot", (disc,), root, "sqrt")
    mh = rec.op("Negate", (half,), -half, "minus_half")
    w_plus = rec.op("Add", (mh, root), mh + root, "w_plus")
    w_minus = rec.op("Subtract", (mh, root), mh - root, "w_minus")
    r = rec.op("Reciprocal", (a,), reciprocal(a), "reciprocal_a")
    t_plus = rec.op("Multiply", (r, w_plus), r * w_plus, "root_plus")
    t_minus = rec.op("Multiply", (r, w_minus), r * w_minus, "root_minus")
    roots = [t_plus] if t_plus == t_minus else [t_plus, t_minus]
    return roots, rec.finish({"root_plus": t_plus, "root_minus": t_minus})


# linear systems


@dataclass(frozen=True)
class LinearSystem:
    coefficients: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]

    def __post_init__(self):
        rows = tuple(tuple(exact(x) for x in row) for row in self.coefficients)
        rhs = tuple(exact(x) for x in self.rhs)
        if not rows or not rows[0]:
            raise ValueError("system needs at least one equation and one unknown")
        if any(len(row) != len(rows[0]) for row in rows):
            raise ValueError("coefficient matrix is not rectangular")
        if len(rhs) != len(rows):
            raise ValueError("right-hand side length does not match row count")
        object.__setattr__(self, "coefficients", rows)
        object.__setattr__(self, "rhs", rhs)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.coefficients), len(self.coefficients[0])

    def residuals(self, x: Sequence[Numberish]) -> list[Fraction]:
        x = [exact(v) for v in x]
        return [sum((a * v for a, v in zip(row, x)), Fraction(0)) - b
                for row, b in zip(self.coefficients, self.rhs)]


class Kind(enum.Enum):
    UNIQUE = "unique"
    PARAMETRIC = "parametric"
    INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class SolutionSet:
    kind: Kind
    particular: tuple[Fraction, ...] | None = None
    basis: tuple[tuple[Fraction, ...], ...] = ()

    def point(self, *params: Numberish) -> tuple[Fraction, ...]:
        """The solution at the given free-parameter values."""
        if self.particular is None:
            raise ValueError("inconsistent system has no solutions")
        if len(params) != len(self.basis):
            raise ValueError(f"expected {len(self.basis)} parameters")
        out = list(self.particular)
        for t, vec in zip(params, self.basis):
            t = exact(t)
            out = [x + t * d for x, d in zip(out, vec)]
        return tuple(out)


def gaussian_eliminate(system: LinearSystem) -> SolutionSet:
    """Exact reduction to reduced row-echelon form.

    The pivot for each column is the first remaining row with a nonzero
    entry; free variables are the non-pivot columns in ascending order.
    """
    m, n = system.shape
    rows = [list(row) + [b] for row, b in zip(system.coefficients, system.rhs)]
    pivots = []
    r = 0
    for col in range(n):
        if r == m:
            break
        pr = next((i for i in range(r, m) if rows[i][col] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        lead = rows[r][col]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][col] != 0:
                k = rows[i][col]
                rows[i] = [x - k * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1

    if any(all(x == 0 for x in row[:n]) and row[n] != 0 for row in rows):
        return SolutionSet(Kind.INCONSISTENT)

    particular = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        particular[col] = rows[i][n]
    free = [col for col in range(n) if col not in pivots]
    if not free:
        return SolutionSet(Kind.UNIQUE, tuple(particular))
    basis = []
    for f in free:
        vec = [Fraction(0)] * n
        vec[f] = Fraction(1)
        for i, col in enumerate(pivots):
            vec[col] = -rows[i][f]
        basis.append(tuple(vec))
    return SolutionSet(Kind.PARAMETRIC, tuple(particular), tuple(basis))


# symmetric systems and polynomials


def solve_symmetric(u: Numberish, v: Numberish, rec: Recorder | None = None) -> tuple[Fraction, Fraction]:
    """``x + y = u``, ``x * y = v`` by semi-sum and semi-difference; ``x >= y``."""
    u, v = exact(u), exact(v)
    rec = rec or Recorder("solve_symmetric")
    half = rec.op("Halve", (u,), u / 2, "semi_sum")
    sq = rec.op("Square", (half,), half * half, "semi_sum_squared")
    disc = rec.op("Subtract", (sq, v), sq - v, "semi_difference_squared")
    if disc < 0:
        raise NegativeDiscriminant(f"(u/2)^2 - v = {disc} is negative")
    d = rec.op("SquareRoot", (disc,), sqrt_exact(disc), "semi_difference")
    x = rec.op("Add", (half, d), half + d, "x")
    y = rec.op("Subtract", (half, d), half - d, "y")
    return x, y


def evaluate_polynomial(coeffs: Sequence[Numberish], t: Numberish) -> Fraction:
    """Horner evaluation; coefficients run from the highest power down."""
    t = exact(t)
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * t + exact(c)
    return acc


def _divisors(n: int) -> list[int]:
    fz = factor(n)
    out = [1]
    for p, e in fz.factors:
        out = [d * p**k for d in out for k in range(e + 1)]
    return out


def rational_roots(coeffs: Sequence[Numberish]) -> list[Fraction]:
    """Distinct rational roots, ascending.  ``coeffs`` run from the highest power down."""
    cs = [exact(c) for c in coeffs]
    if len(cs) < 2:
        raise ValueError("polynomial must have degree at least 1")
    if cs[0] == 0:
        raise ValueError("leading coefficient must be nonzero")
    roots = set()
    while cs[-1] == 0:
        roots.add(Fraction(0))
        cs.pop()
    if len(cs) > 1:
        scale = lcm(*(c.denominator for c in cs))
        ints = [int(c * scale) for c in cs]
        for p, q in itertools.product(_divisors(abs(ints[-1])), _divisors(abs(ints[0]))):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if evaluate_polynomial(ints, cand) == 0:
                    roots.add(cand)
    return sorted(roots)
