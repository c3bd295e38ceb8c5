"""Butterfly permutations over GF(2^n)^2 and their boomerang properties."""

__version__ = "0.1.0"
