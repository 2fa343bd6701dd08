"""Exact cohomology, Massey products and singular vectors for the positive Witt algebra."""

__version__ = "0.1.0"
