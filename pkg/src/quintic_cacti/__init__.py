"""Combinatorial atlas of generic quintic polynomials."""
__version__ = "0.1.0"
