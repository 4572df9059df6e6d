"""Exact graded-ring computations and witness checks for graded Goldie theorems."""

__version__ = "1.0.0"
