"""Exact verification toolkit for quaternion-multiplication structure on a
space of weight-3 noncongruence cuspforms and its associated Galois
representation data."""

__version__ = "0.1.0"
