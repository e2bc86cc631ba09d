"""
Common Meadow Toolkit

Exact models of common meadows, a fraction normal form for their terms, a
decision procedure for cancellation meadows of characteristic zero, and
model-level law checking.
"""

__version__ = "0.1.0"
