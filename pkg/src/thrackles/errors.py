"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes: ParseError -> 2, DomainError -> 3,
BudgetExceeded -> 5. Verification *results* are reported, not raised;
InternalInvariantError signals a construction bug, never bad user input.
"""

from __future__ import annotations


class ThrackleError(Exception):
    """Base class for all errors raised by this package."""


class StructureError(ThrackleError, ValueError):
    """A scheme or drawing violates a structural invariant.

    Carries enough context (node/segment/edge ids) to locate the defect.
    """


class DomainError(ThrackleError, ValueError):
    """An operation was called outside its stated precondition."""


class ParseError(ThrackleError, ValueError):
    """A drawing file is malformed; ``lineno`` locates the offending line."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class BudgetExceeded(ThrackleError, RuntimeError):
    """A search space exceeds the configured budget.

    ``estimate`` is the estimated number of structures that enumeration
    would have to visit.
    """

    def __init__(self, message: str, estimate: int):
        self.estimate = estimate
        super().__init__(message)


class InternalInvariantError(ThrackleError, RuntimeError):
    """A machine-checked postcondition failed inside a construction.

    Raised when a surgery or generator produces output that does not verify
    or does not land on the promised surface; indicates a bug in the
    construction, not in the caller's input.
    """
