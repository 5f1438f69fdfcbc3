"""Finite permutative categories, their Gamma construction and Waldhausen checks."""

from .fincat import FinCat, FinPermCat, validate_category, validate_permutative
from .gamma import GammaMor, enumerate_truncated, gamma_compose
from .kernel import get_backend
from .report import Report
from .specfile import load_fixture, parse_spec

__version__ = "0.1.0"

__all__ = [
    "FinCat",
    "FinPermCat",
    "GammaMor",
    "Report",
    "enumerate_truncated",
    "gamma_compose",
    "get_backend",
    "load_fixture",
    "parse_spec",
    "validate_category",
    "validate_permutative",
]
