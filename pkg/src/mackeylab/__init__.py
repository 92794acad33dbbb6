"""Exact rational computations with C2-Mackey functors and rational C2-space models."""

__version__ = "0.1.0"
