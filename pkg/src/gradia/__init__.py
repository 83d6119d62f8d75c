"""Graded dependency calculi: checkers, reduction, equality and property suites."""

__version__ = "0.1.0"
