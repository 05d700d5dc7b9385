"""Exact computation of function-field multiple zeta values and related objects."""

__version__ = "0.1.0"
