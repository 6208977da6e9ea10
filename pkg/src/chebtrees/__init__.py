"""Plane trees, Chebyshev and Zolotarev polynomials, and Z-homotopies between trees."""

__version__ = "0.1.0"
