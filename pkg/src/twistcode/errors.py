"""Exception hierarchy. Each class carries the CLI exit status it maps to."""

from __future__ import annotations


class TwistcodeError(Exception):
    exit_code = 10


class InvalidConductorError(TwistcodeError, ValueError):
    exit_code = 3


class ConductorOverflowError(TwistcodeError, ArithmeticError):
    exit_code = 4


class ParseError(TwistcodeError, ValueError):
    """Malformed literal or data file. ``path``/``line`` are filled in when known."""

    exit_code = 2

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(where + message)


class ValidationError(TwistcodeError, ValueError):
    exit_code = 3


class CapExceededError(TwistcodeError, RuntimeError):
    exit_code = 4


class CharacterDataError(TwistcodeError, ValueError):
    """A class function that should be a character is not (corrupt table, misaligned classes)."""

    exit_code = 3


class EigenvalueRecognitionError(TwistcodeError, ArithmeticError):
    exit_code = 6


class PreconditionError(TwistcodeError, ValueError):
    exit_code = 7


class TwistSelectionError(TwistcodeError, LookupError):
    exit_code = 3


class NumericalFailure(TwistcodeError, ArithmeticError):
    exit_code = 6


class InternalConsistencyError(TwistcodeError, AssertionError):
    exit_code = 5
