"""
Exception hierarchy shared by the parsers, checkers and translators.
"""
from typing import Optional, Sequence, Tuple


class ProofKitError(Exception):
    """Base class for every error raised by the toolkit."""


class ParseError(ProofKitError):
    """Raised when text does not conform to one of the grammars."""

    def __init__(self, message: str, offset: int = 0,
                 expected: Optional[Sequence[str]] = None):
        self.offset = offset
        self.expected = sorted(expected or [])
        detail = f" at offset {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(message + detail)


class AxiomError(ProofKitError):
    """Raised when a formula is not a (simplified) primitive tense axiom."""

    def __init__(self, message: str, clause: str = ""):
        self.clause = clause
        super().__init__(message)


class RuleError(ProofKitError):
    """Unknown rule, missing substitution variable or a failed instantiation."""


class SideConditionError(RuleError):
    """A rule instance violates a side condition such as freshness or P1-P7."""

    def __init__(self, condition: str, message: str):
        self.condition = condition
        super().__init__(f"{condition}: {message}")


class CheckError(ProofKitError):
    """A proof node failed to check."""

    def __init__(self, message: str, path: Tuple[int, ...] = (), rule: str = ""):
        self.path = tuple(path)
        self.rule = rule
        super().__init__(message)


class PolytreeError(ProofKitError):
    """An operation that needs a labeled polytree sequent received something else."""


class TranslationError(ProofKitError):
    """A proof or sequent cannot be translated."""


class StructuralEliminationError(TranslationError):
    """A structural step could not be permuted away."""
