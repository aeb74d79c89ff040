"""Determinants on the boundary-trivial group and the loop-algebra 2-cocycle.

An element f of DG (star-invertible, flat boundary with unitary boundary
values) factorizes as f = g * k with g = f_0 of order zero and k unipotent.
The determinant is exp(TR log k) times the determinant of g, the latter
obtained by integrating TR(g^-1 * dg/dt) along a path from 1 to g inside the
boundary-trivial subgroup.
"""

from dataclasses import dataclass

import numpy as np

from .disk.elements import mode_map
from .disk.quadrature import DiskQuadrature
from .disk.star import (
    FLAT_CONSTANT, FLAT_IDENTITY, FLAT_LOOP, GENERAL, StarElement, moyal, star_commutator,
    star_exp, star_inverse, star_product,
)
from .disk.trace import trace_TR, trace_TR_nu
from .errors import (
    BoundaryNotCommuting, DimensionMismatch, LaurentObstruction, NotInDG, PathNotInG,
    SingularZerothOrder,
)
from .jets import expr as E
from .jets.expr import Evaluator
from .jets.loops import LoopFamily
from .jets.primitives import BumpProfile
from .nuseries import DEFAULT_K, NuSeries, series_log_unipotent

TOL_UNITARY = 1e-8
TOL_UNIPOTENT = 1e-10
TOL_BOUNDARY = 1e-10
TOL_LAURENT = 1e-9


# --- loop algebra data -------------------------------------------------------------

class LoopAlgebraElement:
    """A loop X(theta) = sum_m A_m exp(i m theta) with its flat extension.

    Parameters
    ----------
    modes : dict
        ``{m: A_m}`` with square anti-hermitian traceless matrices.
    profile : BumpProfile, optional
        Radial profile of the extension rho(u) X(theta).
    check : bool
        Validate anti-hermiticity and tracelessness of each coefficient.
    """

    def __init__(self, modes, profile=None, check=True, tol=1e-12, n=None):
        self.modes = {}
        for m, A in sorted(modes.items()):
            A = np.atleast_2d(np.asarray(A, dtype=complex))
            if A.shape[0] != A.shape[1]:
                raise DimensionMismatch("mode coefficients must be square")
            if check:
                scale = max(1.0, np.abs(A).max())
                if np.abs(A + A.conj().T).max() > tol * scale or abs(np.trace(A)) > tol * scale:
                    raise ValueError(f"mode {m} coefficient is not anti-hermitian and traceless")
            if np.any(A):
                self.modes[int(m)] = A
        sizes = {A.shape[0] for A in self.modes.values()}
        if len(sizes) > 1:
            raise DimensionMismatch(f"mode coefficients have sizes {sorted(sizes)}")
        if sizes:
            self.n = sizes.pop()
        elif n is not None:
            self.n = int(n)
        else:
            self.n = next((np.atleast_2d(A).shape[0] for A in modes.values()), 1)
        self.profile = profile or BumpProfile()
        self._ext = None

    def __repr__(self):
        return f"LoopAlgebraElement(modes={sorted(self.modes)}, n={self.n})"

    def coefficient(self, m):
        return self.modes.get(m, np.zeros((self.n, self.n), dtype=complex))

    def boundary_value(self, theta):
        theta = np.asarray(theta, dtype=float)
        out = np.zeros(theta.shape + (self.n, self.n), dtype=complex)
        for m, A in self.modes.items():
            out += np.exp(1j * m * theta)[..., None, None] * A
        return out

    def boundary_derivative(self, theta):
        theta = np.asarray(theta, dtype=float)
        out = np.zeros(theta.shape + (self.n, self.n), dtype=complex)
        for m, A in self.modes.items():
            out += (1j * m * np.exp(1j * m * theta))[..., None, None] * A
        return out

    def extension(self):
        """rho(u) X(theta) as a SmoothMap (built once)."""
        if self._ext is None:
            terms = [mode_map(A, m, self.profile) for m, A in self.modes.items()]
            self._ext = E.add_or_zero(terms, self.n)
        return self._ext

    def element(self, K=DEFAULT_K):
        boundary = FLAT_CONSTANT if set(self.modes) <= {0} else FLAT_LOOP
        return StarElement.from_map(self.extension(), K, boundary)

    def with_profile(self, profile):
        return LoopAlgebraElement(self.modes, profile, check=False, n=self.n)

    def _combine(self, other, fn):
        keys = set(self.modes) | set(other.modes)
        return LoopAlgebraElement({m: fn(self.coefficient(m), other.coefficient(m)) for m in keys},
                                  self.profile, check=False, n=self.n)

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __neg__(self):
        return self.scaled(-1.0)

    def scaled(self, c):
        return LoopAlgebraElement({m: c * A for m, A in self.modes.items()}, self.profile, check=False, n=self.n)

    __rmul__ = scaled

    def __mul__(self, c):
        return self.scaled(c)

    def bracket(self, other):
        """Pointwise commutator [X(theta), Y(theta)] as a mode sum."""
        out = {}
        for m, A in self.modes.items():
            for k, B in other.modes.items():
                out[m + k] = out.get(m + k, 0) + A @ B - B @ A
        return LoopAlgebraElement(out, self.profile, check=False, n=self.n)


def mode_cocycle(X, Y):
    """Closed form of (1/2 pi i) contour int tr X dY = sum_k k tr(A_-k B_k)."""
    return complex(sum(k * np.trace(X.coefficient(-k) @ B) for k, B in Y.modes.items()))


# --- cocycles ------------------------------------------------------------------------

@dataclass(frozen=True)
class CocycleValue:
    c_star: complex
    c_boundary: complex

    @property
    def residual(self):
        return abs(self.c_star - self.c_boundary)


def boundary_cocycle(X, Y, quad):
    """(1/2 pi i) contour int tr(X dY) by the trapezoid rule in theta."""
    th = quad.theta
    integrand = np.trace(X.boundary_value(th) @ Y.boundary_derivative(th), axis1=-2, axis2=-1)
    return complex(quad.boundary_integrate(integrand) / (2j * np.pi))


def lie_cocycle(X, Y, quad, K=1):
    """TR of the star commutator of the extensions, next to the boundary form."""
    c_star = trace_TR(star_commutator(X.element(K), Y.element(K)), quad)
    return CocycleValue(c_star, boundary_cocycle(X, Y, quad))


def section_psi(X, quad=None, K=DEFAULT_K, tol_tail=1e-14):
    """psi(exp X) = star exponential of the flat extension of X."""
    return star_exp(X.element(K), tol_tail, quad)


# --- determinants --------------------------------------------------------------------

def _quad(quad):
    return quad if quad is not None else DiskQuadrature()


def factorize(f, quad=None, tol_unitary=TOL_UNITARY, tol_unipotent=TOL_UNIPOTENT):
    """Split f in DG as g * k with g = f_0 (order zero) and k = 1 + O(nu)."""
    quad = _quad(quad)
    if f.boundary == GENERAL:
        raise NotInDG("element has no flat boundary")
    b = Evaluator(quad.boundary_points).data(f[0], 0)[0]
    eye = np.eye(f.n)
    if np.abs(b.conj().transpose(0, 2, 1) @ b - eye).max() > tol_unitary:
        raise NotInDG("boundary values are not unitary")
    g = StarElement.from_map(f[0], f.K, f.boundary)
    try:
        k = star_product(star_inverse(g, quad), f)
    except SingularZerothOrder as exc:
        raise NotInDG(str(exc)) from exc
    k0 = Evaluator(np.vstack([quad.points, quad.boundary_points])).data(k[0], 0)[0]
    if np.abs(k0 - eye).max() > tol_unipotent:
        raise NotInDG("order-zero part of g^-1 * f is not the identity")
    coeffs = (E.identity(f.n),) + k.series.coeffs[1:]
    return g, StarElement(NuSeries(coeffs, 0), k.boundary)


def log_det_unipotent(k, quad):
    """TR log k for k = 1 + O(nu)."""
    return trace_TR(StarElement(series_log_unipotent(k.series, moyal), k.boundary), quad)


def det_unipotent(k, quad):
    return complex(np.exp(log_det_unipotent(k, quad)))


@dataclass(frozen=True)
class LogDerivativeIntegral:
    """int_0^1 TR_nu(g^-1 * dg/dt) dt split into its nu**-1 and nu**0 parts."""

    value: complex
    laurent: complex
    laurent_max: float
    nodes: np.ndarray
    integrand: np.ndarray


def log_derivative_traces(value, deriv, quad):
    """(nu**-1, nu**0) coefficients of TR_nu(value^-1 * deriv) for zero-order maps."""
    G = StarElement.from_map(value, 1, FLAT_IDENTITY)
    D = StarElement.from_map(deriv, 1, FLAT_CONSTANT)
    tr = trace_TR_nu(star_product(star_inverse(G, quad), D), quad)
    return tr[-1], tr[0]


def integrate_log_derivative(family, quad, periodic, check_boundary=True, tol_boundary=TOL_BOUNDARY):
    t, w = quad.loop_nodes() if periodic else quad.path_nodes()
    eye = np.eye(family.n)
    lau = np.zeros(len(t), dtype=complex)
    val = np.zeros(len(t), dtype=complex)
    for i, ti in enumerate(t):
        g = family.at(ti)
        if check_boundary:
            b = Evaluator(quad.boundary_points).data(g, 0)[0]
            if np.abs(b - eye).max() > tol_boundary:
                raise PathNotInG(f"slice t={ti:.6g} is not the identity on the boundary")
        lau[i], val[i] = log_derivative_traces(g, family.dt(ti), quad)
    return LogDerivativeIntegral(complex(np.dot(w, val)), complex(np.dot(w, lau)),
                                 float(np.abs(lau).max()), t, val)


def det_homotopy(path, quad=None, tol_laurent=TOL_LAURENT, tol_boundary=TOL_BOUNDARY):
    """log det g = int_0^1 TR(g(t)^-1 * g'(t)) dt along a path from 1 to g.

    Gauss-Legendre nodes in t.  Every node slice must be the identity on the
    boundary circle, and the nu**-1 part of the integrand must vanish.
    """
    quad = _quad(quad)
    start = Evaluator(np.vstack([quad.points, quad.boundary_points])).data(path.at(0.0), 0)[0]
    if np.abs(start - np.eye(path.n)).max() > tol_boundary:
        raise PathNotInG("path does not start at the identity")
    res = integrate_log_derivative(path, quad, periodic=False, tol_boundary=tol_boundary)
    if res.laurent_max > tol_laurent:
        raise LaurentObstruction(f"nu^-1 part of the integrand reaches {res.laurent_max:.3g}")
    return res


def log_det(f, quad=None, path=None, tol_endpoint=1e-8):
    """log det f for f in the boundary-trivial group, defined mod 2 pi i.

    ``path`` joins 1 to the order-zero part f_0 inside the group; it may be
    omitted only when f_0 is the identity at every quadrature node.
    """
    quad = _quad(quad)
    g, k = factorize(f, quad)
    pts = np.vstack([quad.points, quad.boundary_points])
    g0 = Evaluator(pts).data(g[0], 0)[0]
    if path is None:
        if np.abs(g0 - np.eye(f.n)).max() > tol_endpoint:
            raise PathNotInG("a homotopy to the order-zero part is required")
        lg = 0j
    else:
        end = Evaluator(pts).data(path.at(1.0), 0)[0]
        if np.abs(end - g0).max() > tol_endpoint:
            raise PathNotInG("path does not end at the order-zero part")
        lg = det_homotopy(path, quad).value
    return lg + log_det_unipotent(k, quad)


def wrap_2pi_i(z):
    """Representative of z mod 2 pi i with imaginary part in (-pi, pi]."""
    z = complex(z)
    im = (z.imag + np.pi) % (2 * np.pi) - np.pi
    if im == -np.pi:
        im = np.pi
    return complex(z.real, im)


# --- group-level cocycle --------------------------------------------------------------

def exp_product_path(factors):
    """s -> prod_i exp(s A_i) (pointwise) with its exact s-derivative."""

    def value(s):
        out = E.expm(s * factors[0])
        for A in factors[1:]:
            out = out @ E.expm(s * A)
        return out

    def deriv(s):
        exps = [E.expm(s * A) for A in factors]
        terms = []
        for i, A in enumerate(factors):
            prod = None
            for j, ej in enumerate(exps):
                fac = A @ ej if i == j else ej
                prod = fac if prod is None else prod @ fac
            terms.append(prod)
        return E.add(*terms)

    return LoopFamily(value, deriv, closed=False, name="exp-path")


@dataclass(frozen=True)
class GroupCocycle:
    eps: tuple
    log_dets: tuple
    limit: complex

    @property
    def ratios(self):
        return tuple(w / e**2 for e, w in zip(self.eps, self.log_dets))


def boundary_commutator_norm(X, Y, quad):
    th = quad.theta
    a, b = X.boundary_value(th), Y.boundary_value(th)
    return float(np.abs(a @ b - b @ a).max(initial=0.0))


def group_commutator_log_det(X, Y, eps, quad, K=DEFAULT_K, tol_tail=1e-14):
    """log det of psi(e^{eps X}) * psi(e^{eps Y}) * psi(e^{-eps X}) * psi(e^{-eps Y})."""
    px = section_psi(X.scaled(eps), quad, K, tol_tail)
    py = section_psi(Y.scaled(eps), quad, K, tol_tail)
    pmx = section_psi(X.scaled(-eps), quad, K, tol_tail)
    pmy = section_psi(Y.scaled(-eps), quad, K, tol_tail)
    C = star_product(star_product(star_product(px, py), pmx), pmy)
    g, k = factorize(C, quad)
    x, y = X.extension(), Y.extension()
    path = exp_product_path([eps * x, eps * y, -eps * x, -eps * y])
    return det_homotopy(path, quad).value + log_det_unipotent(k, quad)


def extrapolate(eps, values):
    """Polynomial fit of values(eps) of degree len(eps) - 1 (at most 2); value at 0."""
    eps = np.asarray(eps, dtype=float)
    deg = min(len(eps) - 1, 2)
    V = np.vander(eps, deg + 1, increasing=True)
    coef = np.linalg.lstsq(V, np.asarray(values, dtype=complex), rcond=None)[0]
    return complex(coef[0])


def group_cocycle_extract(X, Y, eps_list=(0.2, 0.1, 0.05), quad=None, K=DEFAULT_K, tol_commute=1e-12):
    """Extract the cocycle from log det of a star group commutator.

    Requires [X(theta), Y(theta)] = 0 on the circle so that the commutator is
    the identity on the boundary.  w(eps) / eps**2 is extrapolated to eps = 0.
    """
    quad = _quad(quad)
    scale = max(1.0, max((np.abs(A).max() for A in list(X.modes.values()) + list(Y.modes.values())), default=1.0))
    if boundary_commutator_norm(X, Y, quad) > tol_commute * scale**2:
        raise BoundaryNotCommuting("boundary loops do not commute pointwise")
    eps = tuple(float(e) for e in eps_list)
    ws = tuple(group_commutator_log_det(X, Y, e, quad, K) for e in eps)
    return GroupCocycle(eps, ws, extrapolate(eps, [w / e**2 for e, w in zip(eps, ws)]))
