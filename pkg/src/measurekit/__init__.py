"""Exact computational measure theory on finite spaces and the real line."""

__version__ = "0.1.0"
