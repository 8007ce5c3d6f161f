"""
Rotmerge Errors Module
Exception hierarchy shared by the library, the CLI and the benchmark harness.
"""

from typing import Optional


class RotmergeError(Exception):
    """Base class for every error raised by rotmerge."""


class DimensionError(RotmergeError, ValueError):
    """Operands act on different numbers of qubits."""


class UsageError(RotmergeError, ValueError):
    """A documented precondition was violated by the caller."""


class ResourceLimitError(RotmergeError, MemoryError):
    """A dense representation was requested beyond its qubit cap."""


class AngleArithmeticError(RotmergeError, ArithmeticError):
    """An exact angle grew beyond the supported denominator width."""


class MissingParameterError(RotmergeError, KeyError):
    """An angle was evaluated without a value for one of its symbols."""


class CircuitParseError(RotmergeError, ValueError):
    """Malformed circuit text."""

    def __init__(self, message: str, line_no: Optional[int] = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class UnsupportedGateError(CircuitParseError):
    """Well-formed input that uses a gate or statement outside the Clifford+RZ set."""


class UnrepresentableAngleError(RotmergeError, ValueError):
    """The `.qc` writer was given an angle that is not a multiple of pi/4."""


class InvariantError(RotmergeError, AssertionError):
    """An internal invariant does not hold."""


class BudgetExceededError(RotmergeError, TimeoutError):
    """A pass ran past its time budget."""
