"""Truncated Moyal star products on the disk, loop-group determinants and cocycles."""

from . import currents, determinant, higherdim, topology
from .disk import DiskQuadrature, StarElement, star_exp, star_inverse, star_product, trace_defect, trace_TR_nu
from .jets import BACKEND, BumpProfile
from .nuseries import NuSeries

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BumpProfile", "DiskQuadrature", "NuSeries", "StarElement", "currents", "determinant",
    "higherdim", "star_exp", "star_inverse", "star_product", "topology", "trace_TR_nu", "trace_defect",
]
