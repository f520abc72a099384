"""Twisted Alexander polynomials of knot groups and surjection obstructions."""
__version__ = "0.1.0"
