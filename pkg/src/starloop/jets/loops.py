"""One-parameter families t -> SmoothMap with an analytic t-derivative."""

import numpy as np

from .expr import Evaluator, TimeSlice


class LoopFamily:
    """A path or loop of smooth maps on the disk.

    Parameters
    ----------
    value : callable
        ``t -> SmoothMap`` for t in [0, 1].
    dt : callable
        ``t -> SmoothMap`` giving the exact t-derivative of ``value(t)``.
    closed : bool
        Whether ``value(0)`` and ``value(1)`` coincide.
    """

    def __init__(self, value, dt, closed=False, name="family"):
        self._value = value
        self._dt = dt
        self.closed = bool(closed)
        self.name = name

    def __repr__(self):
        return f"LoopFamily({self.name}, closed={self.closed})"

    def at(self, t):
        return self._value(float(t))

    def dt(self, t):
        return self._dt(float(t))

    def slice(self, t):
        return TimeSlice(self, t)

    @property
    def n(self):
        return self.at(0.0).n

    def closure_residual(self, points):
        """Max |f(1) - f(0)| over the sample points."""
        ev = Evaluator(points)
        a, b = ev.data_many([self.at(0.0), self.at(1.0)], 0)
        return float(np.abs(a[0] - b[0]).max())

    def derivative_residual(self, points, t, h=1e-4):
        """Max |dt(t) - central difference| over the sample points (O(h^2))."""
        ev = Evaluator(points)
        fp, fm, d = ev.data_many([self.at(t + h), self.at(t - h), self.dt(t)], 0)
        return float(np.abs((fp[0] - fm[0]) / (2 * h) - d[0]).max())

    # --- reparametrizations ---------------------------------------------------
    def reparametrized(self, phi, dphi, closed=None, name=None):
        """The family t -> self(phi(t)) with derivative dphi(t) * self'(phi(t))."""
        return LoopFamily(
            lambda t: self.at(phi(t)),
            lambda t: dphi(t) * self.dt(phi(t)),
            closed=self.closed if closed is None else closed,
            name=name or f"{self.name}∘phi",
        )

    def reversed(self):
        return self.reparametrized(lambda t: 1.0 - t, lambda t: -1.0, name=f"{self.name}^-1")

    def repeated(self, k):
        """Traverse a closed loop k times (t -> k t mod 1)."""
        if not self.closed:
            raise ValueError("only closed loops can be repeated")
        return self.reparametrized(lambda t: (k * t) % 1.0, lambda t: float(k), name=f"{self.name}^{k}")
