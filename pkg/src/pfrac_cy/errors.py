"""Exception types shared across the package.

The CLI maps these onto exit codes: textual/structural input problems exit
with 2, mathematical precondition violations with 3, and internal invariant
breaches (which indicate a bug, never bad input) with 4.
"""

from __future__ import annotations


class ParseError(ValueError):
    """Lexical or syntax error in textual input, with an optional position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(message)

    def __str__(self) -> str:
        if self.line is None:
            return self.message
        return f"{self.line}:{self.column}: {self.message}"


class InputValidationError(ValueError):
    """Structured input violates a documented shape or distinctness rule."""


class PreconditionError(ValueError):
    """A mathematical precondition of an operation does not hold."""


class InadmissibleConfigError(PreconditionError):
    """Some k hyperplanes of the configuration do not meet in a single point."""


class NotGeneralPositionError(PreconditionError):
    """The operation requires all intersection points to be simple."""


class PoleAtNodeError(PreconditionError):
    """A rational function is evaluated or expanded at a zero of its denominator."""


class DuplicateNodeError(PreconditionError):
    """Interpolation nodes that must be pairwise distinct coincide."""


class FieldMismatchError(PreconditionError):
    """Arithmetic between elements of two different quadratic extensions."""


class SingularMatrixError(ValueError):
    """Exact elimination hit a singular matrix."""


class InternalInvariantError(RuntimeError):
    """An invariant that valid inputs cannot break was violated: a bug."""
