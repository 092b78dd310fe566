"""Parabolic and elliptic Eisenstein series, Poincare series and Green's functions on PSL(2,Z)."""

from __future__ import annotations

from .autoseries import SeriesEvaluation, eell, epar, pell
from .errors import (
    CoincidenceError,
    ConsistencyError,
    DomainError,
    EisenlabError,
    NonConvergenceError,
    PoleError,
    ResourceLimitError,
)
from .greens import g_free, gell, green_automorphic
from .hypgeo import UhpPoint
from .modgroup import elliptic_anchor, enumerate_ball

__version__ = "0.1.0"

__all__ = [
    "SeriesEvaluation", "epar", "eell", "pell", "g_free", "gell", "green_automorphic",
    "UhpPoint", "elliptic_anchor", "enumerate_ball",
    "EisenlabError", "DomainError", "PoleError", "CoincidenceError", "ResourceLimitError",
    "NonConvergenceError", "ConsistencyError",
]
