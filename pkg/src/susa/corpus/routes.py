"""Modern solution routes, one per problem.

Each route returns ``(candidates, trace, details)`` where candidates are
``(bindings, reason)`` pairs; a nonempty reason marks a candidate the route
itself already knows to be impossible.  Nonnegativity filtering is left to
the caller.
"""

from __future__ import annotations

import random
from fractions import Fraction

from ..equations import (
    Kind,
    LinearSystem,
    Quadratic,
    complete_square,
    gaussian_eliminate,
    rational_roots,
    solve_symmetric,
)
from ..errors import CorpusFormatError, NoRationalRoot
from ..expr import Sub, evaluate
from ..numtheory import sqrt_exact
from ..trace import Recorder

MODERN = "modern"


def _rec(spec) -> Recorder:
    return Recorder(f"{spec.id}/modern", spec.inputs)


def _smt8_1(spec):
    rec = _rec(spec)
    area, excess = spec.inputs["area"], spec.inputs["excess"]
    # y = 4z, x = 7z - excess, so xy = 28z^2 - 4*excess*z
    rec.note("substitute y = 4z; the provisional width y + (3/4)y becomes 7z = x + 5")
    a = rec.op("Multiply", (7, 4), Fraction(28), "coef_area")
    b = rec.op("Multiply", (excess, -4), -4 * excess, "linear_coef")
    roots, qt = complete_square(Quadratic(a, b, area), MODERN)
    rec.extend(qt, "quadratic.")
    out = []
    for z in roots:
        out.append(({"x": 7 * z - excess, "y": 4 * z, "z": z}, ""))
    return out, rec.finish({"z": roots[0]} if roots else {}), {}


def _smt8_2(spec):
    rec = _rec(spec)
    area, excess = spec.inputs["area"], spec.inputs["excess"]
    # y = 4z, x = 5z + excess, so xy = 20z^2 + 4*excess*z
    rec.note("substitute y = 4z; y + (1/4)y becomes 5z and x = 5z + 5")
    a = rec.op("Multiply", (5, 4), Fraction(20), "coef_area")
    b = rec.op("Multiply", (excess, 4), 4 * excess, "linear_coef")
    roots, qt = complete_square(Quadratic(a, b, area), MODERN)
    rec.extend(qt, "quadratic.")
    out = [({"x": 5 * z + excess, "y": 4 * z, "z": z}, "") for z in roots]
    return out, rec.finish({"z": roots[0]} if roots else {}), {}


def _smt11_1(spec):
    rec = _rec(spec)
    x, subtracted = spec.inputs["factor"], spec.inputs["subtracted"]
    rec.note("x(x + y) - S = x^2 reduces to xy = S; indeterminate, so x is chosen")
    r = rec.op("Reciprocal", (x,), 1 / x, "reciprocal_x")
    y = rec.op("Multiply", (r, subtracted), r * subtracted, "y")
    return [({"x": x, "y": y, "sum": x + y}, "")], rec.finish({"x": x, "y": y}), {}


def _smt11_2(spec):
    rec = _rec(spec)
    total, s = spec.inputs["total"], spec.inputs["sum"]
    w, f = spec.inputs["width_coef"], spec.inputs["factor"]
    rec.note("substitute y = 0;35 - 0;20x into the first equation")
    a = rec.op("Square", (f,), f * f, "coef_x2")
    lin = rec.op("Add", (f * s - w * f, 1), f * s - w * f + 1, "coef_x")
    c = rec.op("Subtract", (w * s, total), w * s - total, "constant")
    roots, qt = complete_square(Quadratic(a, -lin, c), MODERN)
    rec.extend(qt, "quadratic.")
    out = [({"x": x, "y": s - f * x}, "") for x in roots]
    return out, rec.finish({}), {}


def _smt17(spec):
    rec = _rec(spec)
    q, combined = spec.inputs["quarter_sum"], spec.inputs["combined"]
    u = rec.op("Multiply", (q, 4), 4 * q, "sum")
    sq = rec.op("Square", (u,), u * u, "sum_squared")
    triple = rec.op("Subtract", (sq, combined), sq - combined, "triple_area")
    v = rec.op("Multiply", (triple, Fraction(1, 3)), triple / 3, "area")
    x, y = solve_symmetric(u, v, rec)
    bindings = {"x": x, "y": y, "excess": x - y, "true_area": x * y,
                "checksum": x * y + (x - y) ** 2}
    return [(bindings, "")], rec.finish({"x": x, "y": y}), {}


def _smt19(spec):
    rec = _rec(spec)
    area, product = spec.inputs["area"], spec.inputs["product"]
    rec.note("y = area/x turns the second equation into x^8 + area^2 x^4 = product^2; set z = x^4")
    b = rec.op("Square", (area,), area * area, "area_squared")
    c = rec.op("Square", (product,), product * product, "product_squared")
    roots, qt = complete_square(Quadratic(1, b, c), MODERN)
    rec.extend(qt, "quadratic.")
    out = []
    for z in roots:
        if z < 0:
            out.append(({"z": z}, "x^4 = z is negative: no real length"))
            continue
        x2 = sqrt_exact(z)
        x = sqrt_exact(x2)
        for sx in (x, -x):
            y = area / sx
            d = sqrt_exact(sx * sx + y * y)
            out.append(({"x": sx, "y": y, "d": d, "x_squared": x2}, ""))
    return out, rec.finish({"z": max(roots)} if roots else {}), {}


def linear_system(spec) -> LinearSystem:
    """Coefficients of an affine statement, read off by evaluation."""
    names = spec.unknown_names
    zero = {n: Fraction(0) for n in names}
    rows, rhs = [], []
    for eq in spec.statement:
        f = Sub(eq.lhs, eq.rhs)
        base = evaluate(f, zero)
        row = [evaluate(f, {**zero, n: Fraction(1)}) - base for n in names]
        rng = random.Random(len(rows))
        for _ in range(3):
            pt = {n: Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for n in names}
            if evaluate(f, pt) != base + sum(c * pt[n] for c, n in zip(row, names)):
                raise CorpusFormatError(f"{spec.id}: equation {eq} is not linear")
        rows.append(row)
        rhs.append(-base)
    return LinearSystem(tuple(map(tuple, rows)), tuple(rhs))


def _gaussian(spec):
    rec = _rec(spec)
    names = spec.unknown_names
    sol = gaussian_eliminate(linear_system(spec))
    details = {"solution_set": sol}
    if sol.kind is Kind.INCONSISTENT:
        rec.note("inconsistent system")
        return [], rec.finish({}), details
    point = dict(zip(names, sol.particular))
    if sol.kind is Kind.PARAMETRIC:
        for vec in sol.basis:
            rec.note("direction (" + ", ".join(str(v) for v in vec) + ")")
    return [(point, "")], rec.finish(point), details


def _modern3(spec):
    # z + xy + z^2 = 3 and xy + z = 2 give z^2 = 1
    rec = _rec(spec)
    rec.note("substitute xy = 2 - z into the first equation: z^2 = 1")
    zs, qt = complete_square(Quadratic(1, 0, 1), MODERN)
    rec.extend(qt, "z.")
    out = []
    branches = {}
    for z in zs:
        # x = (2 - z)/y in the second equation: y^3 + (z^2 - 1)y - (2 - z)z = 0
        cubic = [1, 0, z * z - 1, -(2 - z) * z]
        ys = [y for y in rational_roots(cubic) if y != 0]
        if not ys:
            err = NoRationalRoot(f"z = {z}: y^3 + ({z * z - 1})y - ({(2 - z) * z}) = 0 has no rational root")
            rec.note(str(err))
            branches[z] = err
            continue
        for y in ys:
            x = (2 - z) / y
            out.append(({"x": x, "y": y, "z": z}, ""))
        branches[z] = ys
    first = out[0][0] if out else {}
    return out, rec.finish(first), {"branches": branches}


def _reduce_uv(rec):
    # u^2 - 3v = 4, uv = 16: v = 16/u gives u^3 - 4u - 48 = 0
    cubic = [1, 0, -4, -48]
    us = rational_roots(cubic)
    for u in us:
        rec.op("Reciprocal", (u,), 1 / u, "reciprocal_u")
    rec.note("u^3 - 4u - 48 = 0; rational roots: " + ", ".join(str(u) for u in us))
    return [(u, Fraction(16) / u) for u in us if u != 0]


def _modern4(spec):
    rec = _rec(spec)
    rec.note("u = x + y, v = xy: u^2 - 3v = 4 and uv = 16")
    out = []
    for u, v in _reduce_uv(rec):
        roots, qt = complete_square(Quadratic.from_zero_form(1, -u, v), MODERN)
        rec.extend(qt, "z.")
        if len(roots) == 1:
            out.append(({"x": roots[0], "y": roots[0]}, ""))
        else:
            hi, lo = max(roots), min(roots)
            out.append(({"x": hi, "y": lo}, ""))
            out.append(({"x": lo, "y": hi}, ""))
    return out, rec.finish(out[0][0] if out else {}), {}


def _modern5(spec):
    rec = _rec(spec)
    out = [({"u": u, "v": v}, "") for u, v in _reduce_uv(rec)]
    return out, rec.finish(out[0][0] if out else {}), {}


MODERN_ROUTES = {
    "smt8.1": _smt8_1,
    "smt8.2": _smt8_2,
    "smt11.1": _smt11_1,
    "smt11.2": _smt11_2,
    "smt17": _smt17,
    "smt19": _smt19,
    "modern.1": _gaussian,
    "modern.2": _gaussian,
    "modern.3": _modern3,
    "modern.4": _modern4,
    "modern.5": _modern5,
}
