"""Torsion square classes, spinor norms, symmetric complexes and quaternionic L-values."""

__version__ = "0.1.0"
