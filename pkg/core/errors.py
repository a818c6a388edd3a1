# In: core/errors.py
"""Exception hierarchy shared by every module. All domain errors derive from SfmError."""
from typing import Any, List, Optional, Tuple


class SfmError(Exception):
    """Root of every error raised by the toolkit."""


# --- Automata ---
class GfaValidationError(SfmError, ValueError):
    """A candidate automaton violates one of the GFA structural clauses."""

    def __init__(self, message: str, element: Any = None):
        super().__init__(message)
        self.element = element


class FinalIsInitial(GfaValidationError):
    pass


class FinalAmongStates(GfaValidationError):
    pass


class EpsilonToNonFinal(GfaValidationError):
    pass


class OutgoingFromFinal(GfaValidationError):
    pass


class UnknownLabel(GfaValidationError):
    pass


class UnknownState(GfaValidationError):
    pass


class GrammarError(SfmError, ValueError):
    pass


class UnknownNonterminal(GrammarError):
    pass


class AutomatonPreconditionError(SfmError):
    pass


class NotSaturated(AutomatonPreconditionError):
    pass


class NotReduced(AutomatonPreconditionError):
    pass


# --- Terms ---
class TermError(SfmError):
    pass


class SfmSyntaxError(TermError):
    """Ill-formed process or grammar text. Carries the 1-based position when known."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line = line
        self.column = column


class EpsilonMisuse(SfmSyntaxError):
    pass


class ConstAsSummand(SfmSyntaxError):
    pass


class UndefinedConstant(TermError):
    def __init__(self, name: str):
        super().__init__(f"constant '{name}' is not defined")
        self.name = name


class UnguardedBody(TermError):
    pass


class UnboundVariable(TermError):
    def __init__(self, name: str):
        super().__init__(f"variable '{name}' has no binding")
        self.name = name


class LanguageError(SfmError):
    pass


class EpsilonInVarLanguage(LanguageError):
    pass


# --- Proofs ---
class ProofError(SfmError):
    pass


class NoMatch(ProofError):
    pass


class IllegalInstantiation(ProofError):
    pass


class BadPath(ProofError):
    pass


class AlphabetTooSmall(ProofError):
    pass


class PreconditionNotSaturated(ProofError):
    pass


class AlphabetMismatch(ProofError):
    pass


class NameClash(ProofError):
    pass


class ProofConstructionError(ProofError):
    """An internal assertion of the proof pipeline did not hold."""


# --- Serialized artifacts ---
class FormatError(SfmError):
    """Schema or syntax violation in a serialized artifact."""

    def __init__(self, message: str, problems: Optional[List[Tuple[str, str]]] = None):
        self.problems = problems or []
        details = "; ".join(f"{loc}: {msg}" for loc, msg in self.problems)
        super().__init__(f"{message}: {details}" if details else message)
