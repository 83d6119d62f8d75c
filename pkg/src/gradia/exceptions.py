"""Custom exceptions for gradia.

Every error carries a human-readable ``detail`` and a machine-readable
``code``; each class fixes the process exit code the CLI reports for it.
"""

from typing import Any, Optional


class GradiaError(Exception):
    """Base class for application errors."""

    exit_code: int = 1

    def __init__(self, detail: str, code: str):
        """Initialize the GradiaError.

        Args:
            detail: Human-readable error message
            code: Machine-readable error code
        """
        super().__init__(detail)
        self.detail = detail
        self.code = code

    def __str__(self) -> str:
        return f"{self.code}: {self.detail}"


class TypeCheckError(GradiaError):
    """A typing rule premise failed."""

    exit_code = 1

    def __init__(
        self,
        detail: str,
        code: str,
        rule: str,
        location: str = "<root>",
        expected: Optional[Any] = None,
        found: Optional[Any] = None,
    ):
        """Initialize the TypeCheckError.

        Args:
            detail: Human-readable error message
            code: Machine-readable error code
            rule: Name of the rule whose premise failed first
            location: Dotted path to the offending subterm
            expected: What the rule required (term, type or grade)
            found: What was actually there
        """
        super().__init__(detail, code)
        self.rule = rule
        self.location = location
        self.expected = expected
        self.found = found

    def __str__(self) -> str:
        return f"{self.rule}: {self.code} at {self.location}: {self.detail}"


class TranslationError(GradiaError):
    """A translation was applied outside its source fragment."""

    exit_code = 1


class ParseError(GradiaError):
    """Surface syntax could not be parsed or resolved."""

    exit_code = 2

    def __init__(self, detail: str, code: str, line: int = 0, column: int = 0):
        super().__init__(detail, code)
        self.line = line
        self.column = column

    def __str__(self) -> str:
        return f"{self.code} at {self.line}:{self.column}: {self.detail}"


class FuelExhaustedError(GradiaError):
    """A fuel-bounded evaluation ran out of steps."""

    exit_code = 3


class Cancelled(GradiaError):
    """A long-running equality check was cancelled by its caller."""

    exit_code = 3


class ConfigError(GradiaError):
    """Invalid lattice, signature or harness configuration."""

    exit_code = 4


class LatticeError(ConfigError):
    """Lattice config violates the lattice laws."""


class PtsError(ConfigError):
    """PTS signature is malformed."""


class SuiteFailure(GradiaError):
    """A property suite found counterexamples."""

    exit_code = 5


class GenerationStuck(GradiaError):
    """The term generator gave up after bounded retries."""

    exit_code = 5
