"""Loops in the boundary-trivial group: degree integral versus determinant winding.

For a loop t -> f(t) of order-zero elements equal to 1 on the boundary circle
two integers are computed: the degree integral

    -(1 / 24 pi**2) int tr (f^-1 df)**3 = -(1 / 8 pi**2) int tr(L_t [L_x, L_y]) dt dx dy,

with L_mu = f^-1 d_mu f (the six orderings of the 3-form reduce to three
copies of tr(L_t [L_x, L_y]) by cyclicity), and the winding number of the
determinant, (1 / 2 pi i) int TR(f^-1 * df/dt) dt.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .determinant import integrate_log_derivative
from .disk.quadrature import DiskQuadrature
from .errors import LaurentObstruction, NonUnitarySlice, PathNotInG
from .jets import expr as E
from .jets import taylor1d as t1
from .jets.expr import Evaluator
from .jets.loops import LoopFamily
from .jets.primitives import BumpProfile, Primitive

TOL_UNITARY = 1e-8
TOL_BOUNDARY = 1e-10
TOL_LAURENT = 1e-9

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


class GLoop:
    """A closed loop of order-zero maps that are the identity on the boundary."""

    def __init__(self, family, name=None):
        if not family.closed:
            raise ValueError("a GLoop needs a closed family")
        self.family = family
        self.name = name or family.name

    def __repr__(self):
        return f"GLoop({self.name}, n={self.n})"

    @property
    def n(self):
        return self.family.n

    def reversed(self):
        return GLoop(self.family.reversed(), f"{self.name}^-1")

    def repeated(self, k):
        return GLoop(self.family.repeated(k), f"{self.name}^{k}")

    def validate(self, quad, nt=8, tol_unitary=TOL_UNITARY, tol_boundary=TOL_BOUNDARY):
        """Closure, unitarity on the nodes and identity boundary at nt sample times."""
        eye = np.eye(self.n)
        if self.family.closure_residual(quad.points) > tol_unitary:
            raise ValueError("loop is not closed")
        for t in np.arange(nt) / nt:
            g = self.family.at(t)
            v = Evaluator(quad.points).data(g, 0)[0]
            if np.abs(v.conj().transpose(0, 2, 1) @ v - eye).max() > tol_unitary:
                raise NonUnitarySlice(f"slice t={t:.4g} is not unitary")
            b = Evaluator(quad.boundary_points).data(g, 0)[0]
            if np.abs(b - eye).max() > tol_boundary:
                raise PathNotInG(f"slice t={t:.4g} is not the identity on the boundary")
        return True


# --- loop constructors -------------------------------------------------------------

def _hedgehog_primitives(profile):
    chi = profile.complement()
    cos_part = Primitive("cos(pi chi)", lambda v: t1.cos(np.pi * chi.series(v)))
    # sin(pi chi(v)) vanishes identically where chi = 1, i.e. for v <= s0
    sin_over_root = Primitive(
        "sin(pi chi)/sqrt", lambda v: t1.sin(np.pi * chi.series(v)) * t1.power(v, -0.5),
        zero_below=profile.s0,
    )
    sin_part = Primitive("sin(pi chi)", lambda v: t1.sin(np.pi * chi.series(v)), zero_below=profile.s0)
    return cos_part, sin_over_root, sin_part


def su2_generator_loop(profile=None):
    """Degree-one loop in SU(2)-valued maps that are 1 on the boundary.

    With tau = 2t - 1 and v = x**2 + y**2 + tau**2,

        f = cos(pi chi(v)) + i sin(pi chi(v)) (x sigma_x + y sigma_y + tau sigma_z) / sqrt(v),

    the standard hedgehog map of the ball onto SU(2).  chi = 1 - rho is 1 near
    0 and 0 for v >= 1, so f = 1 on the boundary circle and at t = 0, 1.
    """
    profile = profile or BumpProfile()
    A, B, _ = _hedgehog_primitives(profile)
    dA, dB = A.derivative(), B.derivative()
    I2, sx, sy, sz = (E.Const(m) for m in (np.eye(2), SIGMA_X, SIGMA_Y, SIGMA_Z))
    spatial = E.X @ sx + E.Y @ sy

    def v_of(tau):
        return E.U + tau * tau

    def value(t):
        tau = 2 * t - 1
        v = v_of(tau)
        return E.compose(A, v) @ I2 + 1j * (E.compose(B, v) @ (spatial + tau * sz))

    def deriv(t):
        tau = 2 * t - 1
        v = v_of(tau)
        hedge = spatial + tau * sz
        d_tau = (2 * tau) * (E.compose(dA, v) @ I2) + 1j * (
            (2 * tau) * (E.compose(dB, v) @ hedge) + E.compose(B, v) @ sz
        )
        return 2.0 * d_tau

    return GLoop(LoopFamily(value, deriv, closed=True, name="su2-generator"))


def symmetric_su2_loop(profile=None):
    """The loop a = cos psi + i sin psi cos 2 pi t, b = sin psi sin 2 pi t e^{i theta}.

    psi = pi chi(r**2).  It satisfies f(t, theta) = f(1 - t, theta + pi), an
    orientation-reversing symmetry of the cylinder, so its degree is zero.
    """
    profile = profile or BumpProfile()
    C, B, S = _hedgehog_primitives(profile)
    c, s, bq = E.compose(C, E.U), E.compose(S, E.U), E.compose(B, E.U)
    zp, zm = E.X + 1j * E.Y, E.X - 1j * E.Y
    E11, E22 = E.Const(np.diag([1.0, 0.0])), E.Const(np.diag([0.0, 1.0]))
    E21, E12 = E.Const([[0.0, 0.0], [1.0, 0.0]]), E.Const([[0.0, 1.0], [0.0, 0.0]])

    def assemble(a, abar, b, bbar):
        return a @ E11 + abar @ E22 + b @ E21 - bbar @ E12

    def value(t):
        ct, st = np.cos(2 * np.pi * t), np.sin(2 * np.pi * t)
        return assemble(c + (1j * ct) * s, c - (1j * ct) * s, st * (bq @ zp), st * (bq @ zm))

    def deriv(t):
        w = 2 * np.pi
        ct, st = np.cos(w * t), np.sin(w * t)
        return assemble((-1j * w * st) * s, (1j * w * st) * s, (w * ct) * (bq @ zp), (w * ct) * (bq @ zm))

    return GLoop(LoopFamily(value, deriv, closed=True, name="su2-symmetric"))


def constant_loop(n=2):
    one, nil = E.identity(n), E.zero(n)
    return GLoop(LoopFamily(lambda t: one, lambda t: nil, closed=True, name="constant"))


def perturbed_loop(loop, amplitude=0.1, profile=None):
    """f(t) exp(a sin(2 pi t) W) with W = i chi(u) (x sigma_x + y sigma_z + sigma_y / 2).

    W vanishes on the boundary, so the perturbation stays in the group and is
    homotopic to the original loop through the amplitudes s * a.
    """
    if loop.n != 2:
        raise ValueError("the perturbation is defined for 2x2 loops")
    chi = E.compose((profile or BumpProfile()).complement(), E.U)
    W = 1j * (chi @ (E.X @ E.Const(SIGMA_X) + E.Y @ E.Const(SIGMA_Z) + E.Const(0.5 * SIGMA_Y)))
    fam = loop.family

    def value(t):
        return fam.at(t) @ E.expm((amplitude * np.sin(2 * np.pi * t)) * W)

    def deriv(t):
        e = E.expm((amplitude * np.sin(2 * np.pi * t)) * W)
        dz = (2 * np.pi * amplitude * np.cos(2 * np.pi * t)) * W
        return fam.dt(t) @ e + fam.at(t) @ (dz @ e)

    return GLoop(LoopFamily(value, deriv, closed=True, name=f"{loop.name}+pert"))


# --- the two integers ---------------------------------------------------------------

def _map_ordered(fn, items, jobs):
    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(i) for i in items]


def degree_density(f, ft, quad, tol_unitary=TOL_UNITARY):
    """int_D 3 tr(L_t [L_x, L_y]) dx dy for one time slice."""
    ev = Evaluator(quad.points)
    jf, vt = ev.data_many([f, ft], [1, 0])
    val = jf[0]
    if np.abs(val.conj().transpose(0, 2, 1) @ val - np.eye(val.shape[-1])).max() > tol_unitary:
        raise NonUnitarySlice("loop slice is not unitary on the quadrature nodes")
    inv = np.linalg.inv(val)
    Lx, Ly, Lt = inv @ jf[1], inv @ jf[2], inv @ vt[0]
    dens = 3 * np.trace(Lt @ (Lx @ Ly - Ly @ Lx), axis1=-2, axis2=-1)
    return complex(quad.integrate(dens))


def wzw_integral(loop, quad=None, jobs=1):
    """-(1 / 24 pi**2) int tr (f^-1 df)**3 over [0, 1] x D (trapezoid in t)."""
    quad = quad or DiskQuadrature()
    t, w = quad.loop_nodes()
    fam = loop.family
    vals = _map_ordered(lambda ti: degree_density(fam.at(ti), fam.dt(ti), quad), t, jobs)
    return float((-np.dot(w, vals) / (24 * np.pi**2)).real)


def wzw_by_permutations(Lt, Lx, Ly):
    """Explicit six-term sum of sign(s) tr(L_s1 L_s2 L_s3) over orderings of (t, x, y)."""
    L = (Lt, Lx, Ly)
    perms = [((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1), ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1)]
    return sum(sgn * np.trace(L[a] @ L[b] @ L[c], axis1=-2, axis2=-1) for (a, b, c), sgn in perms)


@dataclass(frozen=True)
class Winding:
    value: complex
    laurent_max: float


def winding_via_determinant(loop, quad=None, tol_laurent=TOL_LAURENT):
    """(1 / 2 pi i) int_0^1 TR(f^-1 * df/dt) dt, with the nu**-1 diagnostic."""
    quad = quad or DiskQuadrature()
    res = integrate_log_derivative(loop.family, quad, periodic=True)
    if res.laurent_max > tol_laurent:
        raise LaurentObstruction(f"nu^-1 part of the integrand reaches {res.laurent_max:.3g}")
    return Winding(res.value / (2j * np.pi), res.laurent_max)
