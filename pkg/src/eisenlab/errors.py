"""Exception hierarchy shared by every evaluator.

The CLI maps each class onto a process exit status, so new failure modes
should subclass one of these rather than raising bare ``ValueError``.
"""

from __future__ import annotations


class EisenlabError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class DomainError(EisenlabError, ValueError):
    """An argument lies outside the region where the requested method converges."""

    exit_code = 3


class PoleError(DomainError):
    """The requested point is a pole of the function."""


class CoincidenceError(DomainError):
    """The two points of a series are (numerically) Gamma-equivalent."""


class ResourceLimitError(EisenlabError):
    """The projected amount of work exceeds the configured budget."""

    exit_code = 4


class NonConvergenceError(EisenlabError):
    """An iterative method failed to reach its tolerance."""

    exit_code = 5


class ConsistencyError(EisenlabError):
    """Two independent evaluation routes disagree beyond tolerance."""

    exit_code = 5
