"""Bivariate truncated Taylor data ("jets") with matrix coefficients."""

from dataclasses import dataclass

import numpy as np

from ..errors import CenterMismatch, DimensionMismatch
from . import kernels
from ._tables import derivative_map, exponents, n_slots, slot

COND_MAX = 1e12


@dataclass(frozen=True, eq=False)
class Jet2D:
    """Order-M Taylor data of a matrix function at one or more centers.

    ``coeffs[slot(a, b), p]`` is ``d^a_x d^b_y f(centers[p]) / (a! b!)``.
    """

    centers: np.ndarray
    order: int
    coeffs: np.ndarray

    def __post_init__(self):
        if self.coeffs.shape[0] != n_slots(self.order):
            raise ValueError(f"order-{self.order} jet needs {n_slots(self.order)} slots, got {self.coeffs.shape[0]}")
        if self.coeffs.shape[1] != len(self.centers):
            raise ValueError("one slot column per center required")

    @property
    def n(self):
        return self.coeffs.shape[2]

    @property
    def npoints(self):
        return self.coeffs.shape[1]

    @property
    def value(self):
        return self.coeffs[0]

    def __getitem__(self, ab):
        a, b = ab
        return self.coeffs[slot(a, b)]

    def slots(self):
        return exponents(self.order)

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot raise the order of a jet")
        return Jet2D(self.centers, order, self.coeffs[: n_slots(order)])

    def derivative(self, da, db):
        """Jet of d^da_x d^db_y f, of order ``order - da - db``."""
        order = self.order - da - db
        if order < 0:
            raise ValueError("derivative order exceeds jet order")
        src, w = derivative_map(order, da, db)
        return Jet2D(self.centers, order, self.coeffs[src] * w[:, None, None, None])

    def directional(self, direction):
        """Taylor coefficients of t -> f(center + t * direction), shape (M+1, P, n, n).

        ``direction`` is a (P, 2) array (one direction per center) or a single pair.
        """
        direction = np.broadcast_to(np.asarray(direction, dtype=float), (self.npoints, 2))
        out = np.zeros((self.order + 1,) + self.coeffs.shape[1:], dtype=complex)
        for s, (a, b) in enumerate(exponents(self.order)):
            w = direction[:, 0] ** a * direction[:, 1] ** b
            out[a + b] += w[:, None, None] * self.coeffs[s]
        return out

    def __add__(self, other):
        _check_pair(self, other, same_n=True)
        order = min(self.order, other.order)
        S = n_slots(order)
        return Jet2D(self.centers, order, self.coeffs[:S] + other.coeffs[:S])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Jet2D(self.centers, self.order, -self.coeffs)

    def __mul__(self, c):
        return Jet2D(self.centers, self.order, self.coeffs * c)

    __rmul__ = __mul__


def _check_pair(a, b, same_n=False):
    if a.centers.shape != b.centers.shape or not np.array_equal(a.centers, b.centers):
        raise CenterMismatch("jets are expanded about different centers")
    if same_n:
        if a.n != b.n:
            raise DimensionMismatch(f"matrix sizes {a.n} and {b.n} differ")
    elif a.n != b.n and 1 not in (a.n, b.n):
        raise DimensionMismatch(f"matrix sizes {a.n} and {b.n} are incompatible")


def constant_jet(value, centers, order):
    centers = np.atleast_2d(np.asarray(centers, dtype=float))
    value = np.asarray(value, dtype=complex)
    if value.ndim == 0:
        value = value.reshape(1, 1)
    c = np.zeros((n_slots(order), len(centers)) + value.shape, dtype=complex)
    c[0] = value
    return Jet2D(centers, order, c)


def coordinate_jet(axis, centers, order):
    """Jet of the coordinate function x (axis 0) or y (axis 1)."""
    centers = np.atleast_2d(np.asarray(centers, dtype=float))
    c = np.zeros((n_slots(order), len(centers), 1, 1), dtype=complex)
    c[0, :, 0, 0] = centers[:, axis]
    if order >= 1:
        c[slot(1, 0) if axis == 0 else slot(0, 1)] = 1.0
    return Jet2D(centers, order, c)


def jet_mul(a, b):
    """Truncated noncommutative Cauchy product; result order is the smaller order."""
    _check_pair(a, b)
    order = min(a.order, b.order)
    return Jet2D(a.centers, order, mul_data(a.coeffs, b.coeffs, order))


def mul_data(a, b, order):
    S = n_slots(order)
    return kernels.jet_mul(a[:S], b[:S], order)


def inverse_data(f, order, cond_max=COND_MAX):
    inv0 = kernels.check_invertible(f[0], cond_max)
    return kernels.jet_inv(f[: n_slots(order)], order, inv0)


def jet_inverse(f, cond_max=COND_MAX):
    return Jet2D(f.centers, f.order, inverse_data(f.coeffs, f.order, cond_max))


def exp_data(f, order):
    """Matrix exponential of a jet by scaling and squaring.

    The jet is scaled by 2**-s so that its value slot has norm <= 1/4, the
    exponential series is summed with jet products until the terms stop
    contributing, and the result is squared s times.
    """
    S = n_slots(order)
    f = f[:S]
    n = f.shape[2]
    nrm = float(np.linalg.norm(f[0], axis=(1, 2)).max(initial=0.0))
    s = max(0, int(np.ceil(np.log2(nrm / 0.25)))) if nrm > 0 else 0
    a = f / 2.0**s
    total = np.zeros_like(a)
    total[0] = np.eye(n)
    term = total.copy()
    for k in range(1, 200):
        term = kernels.jet_mul(term, a, order) / k
        total = total + term
        if k > order and np.abs(term).max() <= 1e-18 * max(1.0, np.abs(total).max()):
            break
    for _ in range(s):
        total = kernels.jet_mul(total, total, order)
    return total


def jet_exp(f):
    return Jet2D(f.centers, f.order, exp_data(f.coeffs, f.order))


def compose_data(taylor, inner, order):
    """Horner evaluation of sum_k taylor[k] * (inner - inner(center))**k.

    ``taylor`` has shape (order+1, P); ``inner`` is scalar jet data.
    """
    delta = np.array(inner[: n_slots(order)], dtype=complex)
    delta[0] = 0.0
    out = np.zeros_like(delta)
    out[0, :, 0, 0] = taylor[order]
    for k in range(order - 1, -1, -1):
        out = kernels.jet_mul(out, delta, order)
        out[0, :, 0, 0] += taylor[k]
    return out


def scalar_compose(prim, inner):
    """Jet of prim(inner) for a scalar-valued jet ``inner``."""
    if inner.n != 1:
        raise DimensionMismatch("scalar_compose needs a scalar (1x1) inner jet")
    taylor = prim.taylor(inner.value[:, 0, 0], inner.order)
    return Jet2D(inner.centers, inner.order, compose_data(taylor, inner.coeffs, inner.order))
