"""Temperley-Lieb diagram calculus for anyonic qudit states."""

__version__ = "0.1.0"
