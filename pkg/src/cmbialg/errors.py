"""Exception types shared across the package."""

from __future__ import annotations


class CMError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(CMError, ValueError):
    """An input object violates a structural precondition."""

    def __init__(self, message: str, where: tuple = ()):
        super().__init__(message)
        self.where = where


class DegreeOverflow(CMError, ArithmeticError):
    """A product would leave the truncated PBW range ``deg <= N``."""

    def __init__(self, degree: int, bound: int):
        super().__init__(f"product of total degree {degree} exceeds the truncation bound {bound}")
        self.degree = degree
        self.bound = bound


class InputError(CMError, ValueError):
    """Malformed project file or command-line input."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + loc)
        self.message = message
        self.line = line
        self.column = column
