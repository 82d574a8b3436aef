"""Counting roots of continuant polynomials and lambda-quiddities over small
finite commutative rings."""

__version__ = "0.1.0"
