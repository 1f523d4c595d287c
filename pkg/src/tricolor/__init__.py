"""Exact 3-coloring for small-diameter graphs."""

__version__ = "0.1.0"
