"""Exact computations with graded algebras, CDGAs, amalgams and Koszul complexes."""

__version__ = "0.1.0"
