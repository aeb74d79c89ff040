"""Constructors for common disk-algebra elements."""

import numpy as np

from ..jets import expr as E
from ..jets.primitives import BumpProfile, angular_profile
from ..nuseries import DEFAULT_K, NuSeries
from .star import FLAT_CONSTANT, FLAT_IDENTITY, GENERAL, StarElement


def _power(z, k):
    out = z
    for _ in range(k - 1):
        out = out @ z
    return out


def mode_map(A, m, profile=None):
    """Flat-boundary extension of A exp(i m theta) to the disk.

    Realized as (x +- i y)**|m| rho(u) u**(-|m|/2) A with u = x**2 + y**2, which
    equals rho(r**2) exp(i m theta) A, is smooth at the origin (rho vanishes
    there) and has all radial derivatives zero at r = 1.
    """
    profile = profile or BumpProfile()
    A = E.Const(np.atleast_2d(np.asarray(A, dtype=complex)))
    w = E.compose(angular_profile(profile, m), E.U)
    if m != 0:
        z = E.X + 1j * E.Y if m > 0 else E.X - 1j * E.Y
        w = _power(z, abs(m)) @ w
    return w @ A


def _random_matrix(rng, n, scale=1.0):
    return scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2 * n)


def random_polynomial(rng, n, degree=2, scale=1.0):
    """sum_{a+b<=degree} C_ab x**a y**b with random complex matrices C_ab."""
    terms = []
    for a in range(degree + 1):
        for b in range(degree + 1 - a):
            mono = E.identity(1)
            for _ in range(a):
                mono = mono @ E.X
            for _ in range(b):
                mono = mono @ E.Y
            terms.append(mono @ E.Const(_random_matrix(rng, n, scale)))
    return E.add(*terms)


def random_bounded(rng, n, K=DEFAULT_K, degree=2, scale=1.0):
    """Polynomial coefficients at every power of nu; no boundary structure."""
    coeffs = tuple(random_polynomial(rng, n, degree, scale) for _ in range(K + 1))
    return StarElement(NuSeries(coeffs, 0), GENERAL)


def random_flat_constant(rng, n, K=DEFAULT_K, profile=None, degree=2, scale=1.0):
    """A_p + chi(u) P_p(x, y) per power: constant, flat boundary values."""
    chi = E.compose((profile or BumpProfile()).complement(), E.U)
    coeffs = tuple(
        E.Const(_random_matrix(rng, n, scale)) + chi @ random_polynomial(rng, n, degree, scale)
        for _ in range(K + 1)
    )
    return StarElement(NuSeries(coeffs, 0), FLAT_CONSTANT)


def random_flat_identity(rng, n, K=DEFAULT_K, profile=None, degree=2, scale=0.3):
    """1 + chi(u) P(x, y) at nu**0 and chi(u) P_p at higher powers."""
    chi = E.compose((profile or BumpProfile()).complement(), E.U)
    coeffs = [E.identity(n) + chi @ random_polynomial(rng, n, degree, scale)]
    coeffs += [chi @ random_polynomial(rng, n, degree, scale) for _ in range(K)]
    return StarElement(NuSeries(tuple(coeffs), 0), FLAT_IDENTITY)
