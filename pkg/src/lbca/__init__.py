"""Exact toolkit for lower bound cluster algebras.

Presentations and Groebner bases of the ideal of relations, the
Stanley-Reisner combinatorics of its initial ideal, and Jacobian checks
for path quivers.
"""

from .polynomial import LaurentPolynomial, Polynomial, YHeavyOrder
from .quiver import DirectedCycle, ExchangeMatrix, IceQuiver

__all__ = [
    "DirectedCycle",
    "ExchangeMatrix",
    "IceQuiver",
    "LaurentPolynomial",
    "Polynomial",
    "YHeavyOrder",
]

__version__ = "0.1.0"
