"""Exact verifier for quasi-smoothness certificates and rationality data of
Fano 3-fold weighted hypersurfaces over prime fields."""

from ._accel import backend
from .wps import WeightSystem, enumerate_monomials

__all__ = ["WeightSystem", "backend", "enumerate_monomials"]
__version__ = "0.1.0"
