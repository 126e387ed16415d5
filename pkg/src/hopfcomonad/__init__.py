"""Exact finite-dimensional checks for Hopf monads, comodules and quantum groupoids."""

from __future__ import annotations

from .errors import HopfError
from .linalg import GF, QQ, Field, Matrix, parse_field

__all__ = ["GF", "QQ", "Field", "HopfError", "Matrix", "parse_field"]
__version__ = "0.1.0"
