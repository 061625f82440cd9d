"""Exception hierarchy shared by every module.

All computation errors derive from :class:`SusaError`.  Errors raised while a
procedure is executing also carry the step index and tablet line.
"""


class SusaError(Exception):
    """Base class for typed computation errors."""

    def __init__(self, message: str = "", *, step: int | None = None, line: str | None = None):
        super().__init__(message)
        self.message = message
        self.step = step
        self.line = line

    def locate(self, step: int, line: str | None) -> "SusaError":
        self.step = step
        self.line = line
        return self

    def __str__(self) -> str:
        where = []
        if self.step is not None:
            where.append(f"step {self.step}")
        if self.line:
            where.append(self.line)
        if where:
            return f"{self.message} (at {', '.join(where)})"
        return self.message


# numeral parsing


class NumeralSyntaxError(SusaError, ValueError):
    pass


class EmptyInput(NumeralSyntaxError):
    pass


class DigitOutOfRange(NumeralSyntaxError):
    pass


class MalformedSeparator(NumeralSyntaxError):
    pass


class ExpressionSyntaxError(SusaError, ValueError):
    """Infix expression could not be parsed; ``column`` is 1-based."""

    def __init__(self, message: str, column: int):
        super().__init__(f"{message} at column {column}")
        self.column = column


# arithmetic


class NonTerminating(SusaError, ValueError):
    """Value has no finite sexagesimal expansion."""


class DivisionByZero(SusaError, ZeroDivisionError):
    pass


class NegativeResult(SusaError, ArithmeticError):
    """A scribal subtraction would go below zero."""


# number theory


class NonPositive(SusaError, ValueError):
    pass


class OutOfBudget(SusaError, ValueError):
    pass


class NotPerfectSquare(SusaError, ArithmeticError):
    pass


class NegativeInput(SusaError, ValueError):
    pass


# equations


class NoRationalRoot(SusaError, ArithmeticError):
    pass


class NegativeDiscriminant(SusaError, ArithmeticError):
    pass


# interpreter / corpus


class UnboundReference(SusaError, LookupError):
    pass


class UnknownLabel(SusaError, LookupError):
    pass


class UnknownProblem(SusaError, LookupError):
    pass


class UnsupportedMode(SusaError, ValueError):
    pass


class MissingBinding(SusaError, LookupError):
    pass


class CorpusFormatError(SusaError, ValueError):
    """A problem or procedure document is malformed."""
