"""Minimum-size F_q-linear sets in PG(l, q^h), checked by exhaustive enumeration."""

from .field import GF, make_field
from .kernels import BACKEND

__all__ = ["GF", "make_field", "BACKEND"]
__version__ = "0.1.0"
