"""Trace functionals TR_nu = (1/(2 pi nu)) int_D tr and its nu**0 part TR."""

from dataclasses import dataclass

import numpy as np

from ..errors import BoundaryNotFlat
from ..jets.expr import Evaluator
from ..nuseries import NuSeries
from .star import GENERAL, star_commutator


def _traces(data):
    return np.trace(data, axis1=-2, axis2=-1)


def trace_TR_nu(f, quad):
    """Laurent series with coefficient (1/2 pi) int tr f_m at nu**(m-1)."""
    ev = Evaluator(quad.points)
    live = [p for p in f.series.powers if not f[p].is_zero]
    data = dict(zip(live, ev.data_many([f[p] for p in live], 0)))
    out = []
    for p in f.series.powers:
        if p in data:
            out.append(complex(quad.integrate(_traces(data[p][0])) / (2 * np.pi)))
        else:
            out.append(0j)
    return NuSeries(tuple(out), -1)


def trace_TR(f, quad):
    """The nu**0 coefficient of TR_nu, i.e. (1/2 pi) int_D tr f_1."""
    if f.K < 1 or f[1].is_zero:
        return 0j
    vals = Evaluator(quad.points).data(f[1], 0)[0]
    return complex(quad.integrate(_traces(vals)) / (2 * np.pi))


def boundary_contour(f, g, quad):
    """(1/2 pi i) contour integral of tr(f dg) over the unit circle.

    ``f`` and ``g`` are SmoothMaps; d/dtheta g = -y g_x + x g_y on the circle.
    """
    pts = quad.boundary_points
    ev = Evaluator(pts)
    fv, gj = ev.data_many([f, g], [0, 1])
    x, y = pts[:, 0, None, None], pts[:, 1, None, None]
    dg = -y * gj[1] + x * gj[2]
    integrand = _traces(fv[0] @ dg) if f.n == g.n else _traces(fv[0] * dg)
    return complex(quad.boundary_integrate(integrand) / (2j * np.pi))


@dataclass(frozen=True)
class TraceDefect:
    lhs: NuSeries
    rhs: complex

    @property
    def laurent(self):
        return self.lhs[-1]

    @property
    def residual(self):
        return abs(self.lhs[0] - self.rhs)


def trace_defect(f, g, quad):
    """TR_nu of the star commutator next to the boundary contour term."""
    if GENERAL in (f.boundary, g.boundary):
        raise BoundaryNotFlat("trace defect needs flat-boundary elements")
    lhs = trace_TR_nu(star_commutator(f, g), quad)
    return TraceDefect(lhs, boundary_contour(f[0], g[0], quad))
