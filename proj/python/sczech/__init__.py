"""Elliptic Dedekind sums over imaginary quadratic fields, twisted
Kloosterman sums and equidistribution experiments."""

from ._sczech import (
    Error,
    Field,
    QuadInt,
    classical_s,
    is_fundamental_discriminant,
    kronecker_symbol,
    star_discrepancy,
)

__all__ = [
    "Error",
    "Field",
    "QuadInt",
    "classical_s",
    "is_fundamental_discriminant",
    "kronecker_symbol",
    "star_discrepancy",
]
__version__ = "0.1.0"
