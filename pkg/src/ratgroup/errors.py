"""Exception hierarchy shared by every module."""


class RationalError(Exception):
    """Base class for all errors raised by :mod:`ratgroup`."""


class MachineError(RationalError, ValueError):
    """A transducer violates one of the structural invariants."""

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class ParseError(RationalError, ValueError):
    """Syntax error in a machine file or element expression."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        super().__init__(message + where)


class DivergenceError(RationalError):
    """The common-prefix fixpoint grew past its bound.

    Raised for machines whose induced map is not injective, for example a
    machine that sends every sequence to the same point.
    """


class InitialResidueError(RationalError):
    """The initial state has a nonempty common output prefix."""


class NotInvertibleError(RationalError):
    """An element has no structurally known inverse."""


class PrefixCodeError(RationalError, ValueError):
    """A word list is not a (complete) prefix code where one is required."""


class SupportError(RationalError):
    """A disjointness requirement for a cone set fails."""
