"""Exact Orlov-Scherbin n-point functions and weighted double Hurwitz numbers.

All values are exact rationals rendered as strings "p/q"; coefficient tables
map monomial strings ("z1^2 z2") to values.
"""

from ._core import Model, compare, compute, hurwitz, model, oracle, preset

__all__ = ["Model", "compare", "compute", "hurwitz", "model", "oracle", "preset"]
