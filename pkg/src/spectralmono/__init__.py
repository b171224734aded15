"""Spectral centralities and their monotonicity under edge addition."""

__version__ = "0.1.0"
