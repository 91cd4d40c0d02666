"""Grothendieck-ring classes of position-space Feynman quadrics, checked by F_q point counts."""

from .errors import (
    BudgetExceeded,
    Disconnected,
    ExhaustedAttempts,
    FeynquadError,
    InvalidDimension,
    KTooLarge,
    NoIntegerFit,
    NotDivisible,
    OutOfRange,
    TooLarge,
    Unsupported,
    ZeroSample,
)
from .lefschetz import L, LClass, eval_at, exact_div, interpolate, projective_class
from .graph import FeynmanGraph, complete, remove_vertex, spanning_trees, star

__all__ = [
    "BudgetExceeded",
    "Disconnected",
    "ExhaustedAttempts",
    "FeynmanGraph",
    "FeynquadError",
    "InvalidDimension",
    "KTooLarge",
    "L",
    "LClass",
    "NoIntegerFit",
    "NotDivisible",
    "OutOfRange",
    "TooLarge",
    "Unsupported",
    "ZeroSample",
    "complete",
    "eval_at",
    "exact_div",
    "interpolate",
    "projective_class",
    "remove_vertex",
    "spanning_trees",
    "star",
]

__version__ = "0.1.0"
