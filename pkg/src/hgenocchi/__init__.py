"""Unified Apostol Hermite-Genocchi polynomials, identity checks and the GHG distribution."""

__version__ = "0.1.0"
