"""Exact constructions of equiangular tight frames and the lattices they generate."""

__version__ = "0.1.0"
