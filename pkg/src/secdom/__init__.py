"""Exact secure domination toolkit: graph families, binary programs, an
in-house branch-and-bound solver and exhaustive oracles."""

__version__ = "0.1.0"
