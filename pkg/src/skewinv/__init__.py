"""Exact O(n)-invariants of tuples of skew-symmetric matrices."""

__version__ = "0.1.0"
