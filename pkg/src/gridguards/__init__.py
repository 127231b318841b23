"""Exact-arithmetic toolkit for grid-based guard placement in integer polygons."""

__version__ = "0.1.0"
