"""Exact computations for Nijenhuis Lie algebras."""
__version__ = "0.1.0"
