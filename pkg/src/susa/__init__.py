"""Exact sexagesimal arithmetic and a scribal-procedure interpreter for the
systems of equations in the Susa mathematical texts."""

from .numeral import ExactNumber, FloatingNumeral, SexagesimalForm, anchor, exact, parse, to_exact
from .numeral import format as format_sexagesimal

__all__ = [
    "ExactNumber",
    "FloatingNumeral",
    "SexagesimalForm",
    "anchor",
    "exact",
    "format_sexagesimal",
    "parse",
    "to_exact",
]

__version__ = "0.1.0"
