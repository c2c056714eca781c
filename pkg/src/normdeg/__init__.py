"""Exact normality-degree computations on finite group subgroup lattices."""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import (
    CapExceededError,
    ConstraintError,
    NormdegError,
    SieveExhaustedError,
    SpecParseError,
)
from .numtheory import ExactRatio, format_ratio, parse_ratio, ratio

__all__ = [
    "__version__",
    "CapExceededError",
    "ConstraintError",
    "NormdegError",
    "SieveExhaustedError",
    "SpecParseError",
    "ExactRatio",
    "format_ratio",
    "parse_ratio",
    "ratio",
]
