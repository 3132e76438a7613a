"""Exact curvature computations and extended weakly symmetric structure checks."""

__version__ = "0.1.0"
