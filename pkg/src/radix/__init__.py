"""Rationalizing transformations for square roots in nested integrals."""

__version__ = "0.1.0"
