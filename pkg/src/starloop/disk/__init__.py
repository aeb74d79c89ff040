"""The deformed disk algebra, its quadrature and trace functionals."""

from .elements import mode_map, random_bounded, random_flat_constant, random_flat_identity
from .quadrature import DiskQuadrature, gauss_legendre, pairwise_sum, periodic_trapezoid
from .star import (
    FLAT_CONSTANT, FLAT_IDENTITY, FLAT_LOOP, GENERAL, StarElement, classify_boundary,
    moyal, moyal_coefficient, star_commutator, star_exp, star_inverse, star_product,
)
from .trace import TraceDefect, boundary_contour, trace_defect, trace_TR, trace_TR_nu
