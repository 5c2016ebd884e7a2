"""Planar orthogonal polynomials and determinantal kernels for Ginibre-type
ensembles with lemniscate droplets and an inserted point charge."""

from .params import EnsembleParams

__all__ = ["EnsembleParams"]
__version__ = "0.1.0"
