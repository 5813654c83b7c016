"""Exact mode calculus and sheaf-cohomology checks for twisted chiral
differential operators on the projective line."""

__version__ = "0.1.0"
