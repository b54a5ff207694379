"""Exact tools for the parametric center problem of the Abel equation."""
from .poly_core import Endpoints, LinearMap, Poly, compose

__version__ = "0.1.0"

__all__ = ["Endpoints", "LinearMap", "Poly", "compose", "__version__"]
