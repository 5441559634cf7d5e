"""Exact algebra for equivariant formal groups on truncated multicurves."""

__version__ = "0.1.0"
