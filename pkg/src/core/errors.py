"""
Exception hierarchy for penney_race.

Input problems map to exit code 2 in main(); everything else maps to 3.
"""


class PenneyError(Exception):
    """Base class for all library errors."""


class InvalidInputError(PenneyError, ValueError):
    """Invalid user input (probability, grid, mode, ...)."""


class PatternError(InvalidInputError):
    """Pattern text that cannot be parsed."""


class PatternSetError(InvalidInputError):
    """Duplicate patterns or one pattern occurring inside another."""

    def __init__(self, message: str, pair: tuple[str, str] | None = None):
        super().__init__(message)
        self.pair = pair


class NonDivisibleError(PenneyError, ArithmeticError):
    """(s-1)^k does not divide the polynomial."""


class InfiniteLimitError(PenneyError, ArithmeticError):
    """A quantity that must be finite has an infinite limit at s = 1."""


class DegenerateMeansError(PenneyError, ArithmeticError):
    """Zero denominator in a closed form built from expected values."""

    def __init__(self, message: str, means: dict | None = None):
        super().__init__(message)
        self.means = means or {}


class SingularSystemError(PenneyError, ArithmeticError):
    """The absorption linear system has no unique solution."""


class VerificationMismatch(PenneyError, RuntimeError):
    """Two independent routes produced different values."""

    def __init__(self, message: str, differences: list[str] | None = None):
        super().__init__(message)
        self.differences = differences or []
