"""Exception types shared by the cyclo modules."""

from __future__ import annotations

from typing import Tuple


class CycloError(Exception):
    """Base class for every error raised by cyclo."""


class HypothesisError(CycloError, ValueError):
    """A parameter tuple violates one of the standing hypotheses.

    ``hypothesis`` is a short stable code (``prime``, ``p-mod-4``, ...) that the
    CLI prints next to the message.
    """

    def __init__(self, message: str, *, hypothesis: str) -> None:
        super().__init__(message)
        self.hypothesis = hypothesis


class NotCoprimeError(CycloError, ValueError):
    pass


class IndexRangeError(CycloError, ValueError):
    """Coset label or rule indices outside their admissible range."""


class SelectionShapeError(CycloError, ValueError):
    pass


class ConfigError(CycloError, ValueError):
    pass


class UnreachableResidueError(CycloError, ValueError):
    """A requested Gauss sum R that no primitive n-th root of unity produces."""

    def __init__(self, message: str, *, reachable: Tuple[int, int]) -> None:
        super().__init__(message)
        self.reachable = reachable


class ArithmeticConsistencyError(CycloError, RuntimeError):
    """An internal cross-check failed; this points at a bug, not at bad input."""


class BudgetExceededError(CycloError):
    def __init__(self, needed: int, budget: int) -> None:
        super().__init__(f"enumeration needs {needed} codewords, budget is {budget}")
        self.needed = needed
        self.budget = budget
