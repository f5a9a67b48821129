"""
Exception hierarchy for the algebra layer.

Every error raised on bad input derives from TLError so the CLI and the API
can map it to a single exit code / HTTP status.
"""


class TLError(Exception):
    """Base class for all tl-calculus input and precondition errors."""


class DomainSpecError(TLError):
    """Malformed or out-of-range coefficient domain descriptor."""


class DomainMismatchError(TLError):
    """Two values from different coefficient domains were combined."""


class ScalarDivisionError(TLError, ZeroDivisionError):
    """Division by an exact (or tolerance) zero."""


class StrandMismatchError(TLError):
    """Diagrams or elements with different strand counts were combined."""


class LetterRangeError(TLError):
    """A Jones-word letter outside 1..n-1."""


class PreconditionError(TLError):
    """Index constraints, level constraints or graph invariants violated."""


class BudgetExceededError(TLError):
    """A size budget or the spectral level cutoff would be exceeded."""


class FloatModeError(TLError):
    """An exact-only operation was requested in float mode."""


class VerificationError(TLError):
    """An identity that an operation asserts on its own output failed."""


class ScalarParseError(TLError):
    """A scalar string could not be read in the active domain."""
