"""Exact arithmetic and verification tools for Theodorus' lesson on irrational square roots."""

__version__ = "0.1.0"
