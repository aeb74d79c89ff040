"""Exact jets of matrix-valued functions on the disk and the expression DAG."""

from .expr import (
    M_MAX, Const, CoordX, CoordY, Evaluator, MatExp, MatInverse, MatProduct,
    PartialDerivative, ScalarCompose, ScalarScale, SmoothMap, Sum, TimeSlice,
    U, X, Y, add, compose, expm, identity, inverse, jet_eval, matmul, partial,
    scale, zero,
)
from .jet import COND_MAX, Jet2D, constant_jet, coordinate_jet, jet_exp, jet_inverse, jet_mul, scalar_compose
from .kernels import BACKEND, available_backends
from .loops import LoopFamily
from .primitives import COS, EXP, SIN, SQRT, BumpProfile, Primitive, angular_profile

__all__ = [
    "M_MAX", "COND_MAX", "BACKEND", "Const", "CoordX", "CoordY", "Evaluator",
    "MatExp", "MatInverse", "MatProduct", "PartialDerivative", "ScalarCompose",
    "ScalarScale", "SmoothMap", "Sum", "TimeSlice", "U", "X", "Y", "add",
    "compose", "expm", "identity", "inverse", "jet_eval", "matmul", "partial",
    "scale", "zero", "Jet2D", "constant_jet", "coordinate_jet", "jet_exp",
    "jet_inverse", "jet_mul", "scalar_compose", "available_backends",
    "LoopFamily", "COS", "EXP", "SIN", "SQRT", "BumpProfile", "Primitive",
    "angular_profile",
]
