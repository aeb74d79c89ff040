"""Univariate primitives used by :class:`~starloop.jets.expr.ScalarCompose`.

A primitive supplies its Taylor coefficients at arbitrary (vectorized)
expansion points.  Most primitives are written as a function of a
:class:`~starloop.jets.taylor1d.Taylor1D` argument, so any combination of
the elementary series operations is available without hand-coded
derivative formulas.
"""

import numpy as np

from ..errors import DomainError
from . import taylor1d as t1


class Primitive:
    """Smooth univariate function known through its Taylor data.

    Parameters
    ----------
    name : str
        Label used in reprs and reports.
    fn : callable
        Maps a ``Taylor1D`` argument to the ``Taylor1D`` of the function.
    zero_below : float, optional
        The function vanishes identically for real arguments ``<= zero_below``;
        those points get the zero series without calling ``fn``.
    domain : (float, float), optional
        Closed interval of admissible real arguments.  Evaluating outside
        raises :class:`DomainError`.
    """

    def __init__(self, name, fn, zero_below=None, domain=None):
        self.name = name
        self._fn = fn
        self.zero_below = zero_below
        self.domain = domain

    def __repr__(self):
        return f"Primitive({self.name})"

    def taylor(self, x0, order):
        x0 = np.atleast_1d(np.asarray(x0, dtype=complex))
        if self.domain is not None:
            lo, hi = self.domain
            tol = 1e-12
            if np.any(np.abs(x0.imag) > tol) or np.any(x0.real < lo - tol) or np.any(x0.real > hi + tol):
                raise DomainError(f"{self.name} evaluated outside its domain [{lo}, {hi}]")
        out = np.zeros((order + 1, x0.size), dtype=complex)
        live = np.ones(x0.size, dtype=bool)
        if self.zero_below is not None:
            live = x0.real > self.zero_below
        if live.any():
            out[:, live] = self._fn(t1.Taylor1D.variable(x0[live], order)).c
        return out

    def series(self, s):
        """Apply the primitive to a Taylor1D argument (no zero_below shortcut)."""
        return self._fn(s)

    def __call__(self, x):
        x = np.asarray(x, dtype=complex)
        return self.taylor(x.ravel(), 0)[0].reshape(x.shape)

    def derivative(self):
        base = self

        class _Derivative(Primitive):
            def taylor(self, x0, order):
                c = base.taylor(x0, order + 1)
                k = np.arange(1, order + 2)[:, None]
                return c[1:] * k

        return _Derivative(f"d({self.name})", None)

    def shifted(self, c):
        """The primitive ``x -> self(x + c)``."""
        zb = None if self.zero_below is None else self.zero_below - c
        dom = None if self.domain is None else (self.domain[0] - c, self.domain[1] - c)
        base = self

        class _Shifted(Primitive):
            def taylor(self, x0, order):
                return base.taylor(np.asarray(x0, dtype=complex) + c, order)

        return _Shifted(f"{self.name}(.+{c:g})", None, zero_below=zb, domain=dom)


EXP = Primitive("exp", t1.exp)
SIN = Primitive("sin", t1.sin)
COS = Primitive("cos", t1.cos)
SQRT = Primitive("sqrt", t1.sqrt, domain=(0.0, np.inf))


class BumpProfile(Primitive):
    """Flat transition rho: 0 on [0, s0], 1 at s = 1, all derivatives
    vanishing at s0 and at 1.

    Built from h(s) = exp(-1/s) as h(tau) / (h(tau) + h(1 - tau)) with
    tau = (s - s0) / (1 - s0).  Arguments above 1 give the constant 1.
    """

    def __init__(self, s0=0.2):
        if not 0.0 <= s0 < 1.0:
            raise ValueError("inner radius s0 must lie in [0, 1)")
        self.s0 = float(s0)
        super().__init__(f"rho[s0={s0:g}]", self._series, zero_below=s0)

    def _series(self, s):
        return t1.smooth_transition((s - self.s0) / (1.0 - self.s0))

    def complement(self):
        """chi = 1 - rho: equal to 1 near 0, 0 at s = 1, flat at both ends."""
        return Primitive(f"1-{self.name}", lambda s: 1.0 - self._series(s))

    def flatness(self, j_check=6):
        """Largest |rho^(j)| over 1 <= j <= j_check at s0 and at 1."""
        pts = np.array([self.s0, 1.0])
        c = t1.Taylor1D(self.taylor(pts, j_check)).derivatives()
        return float(np.abs(c[1:]).max())

    def __eq__(self, other):
        return isinstance(other, BumpProfile) and other.s0 == self.s0

    def __hash__(self):
        return hash(("BumpProfile", self.s0))


def angular_profile(rho, m):
    """rho(u) * u**(-|m|/2), the radial factor that turns (x +- i y)**|m|
    into a flat-boundary extension of exp(+- i m theta)."""
    m = abs(int(m))
    if m == 0:
        return rho
    return Primitive(
        f"{rho.name}*u^-{m}/2",
        lambda s: rho.series(s) * t1.power(s, -0.5 * m),
        zero_below=rho.zero_below,
    )
