"""Exact analysis of unexpected cones and complete-intersection projections of point sets in P^3."""

from .geometry import PointConfig, ProjPoint
from .protocol import GenericityProtocol

__version__ = "0.1.0"

__all__ = ["PointConfig", "ProjPoint", "GenericityProtocol", "__version__"]
