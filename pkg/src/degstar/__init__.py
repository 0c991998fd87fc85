"""Degenerate, star and degenerate-star list colorings."""

__version__ = "0.1.0"
