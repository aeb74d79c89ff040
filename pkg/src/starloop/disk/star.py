"""The Moyal-deformed disk algebra: elements, star product, inverse, exponential.

The symplectic form is dx ^ dy.  The nu**j coefficient of the Moyal product
is the bidifferential operator

    C_j(f, g) = (1/j!) (i/2)**j sum_l (-1)**l binom(j, l)
                (d_x^l d_y^(j-l) f) (d_x^(j-l) d_y^l g),

so that x * y - y * x = -i nu.
"""

from math import comb, factorial

import numpy as np

from ..errors import DimensionMismatch, NoConvergence, SingularMatrix, SingularZerothOrder
from ..jets import expr as E
from ..jets.expr import Evaluator, SmoothMap
from ..jets import kernels
from ..jets.jet import Jet2D
from ..nuseries import DEFAULT_K, NuSeries, series_add, series_inverse, series_mul
from .quadrature import DiskQuadrature

TOL_FLAT = 1e-9
TOL_BOUNDARY = 1e-10
J_CHECK = 6
N_EXP_MAX = 60

# boundary classes, from most to least special
FLAT_IDENTITY = "flat_identity"
FLAT_CONSTANT = "flat_constant"
FLAT_LOOP = "flat_loop"
GENERAL = "general"
_RANK = {FLAT_IDENTITY: 0, FLAT_CONSTANT: 1, FLAT_LOOP: 2, GENERAL: 3}


def moyal_coefficient(f, g, j):
    """The nu**j term C_j(f, g) as a new expression."""
    if j == 0:
        return f @ g
    n = max(f.n, g.n)
    pref = (0.5j) ** j / factorial(j)
    terms = []
    for l in range(j + 1):
        a = f.d(l, j - l)
        b = g.d(j - l, l)
        if a.is_zero or b.is_zero:
            continue
        terms.append(E.scale(pref * (-1) ** l * comb(j, l), a @ b))
    return E.add_or_zero(terms, n)


def moyal(a, b, j):
    """Graded coefficient product for :func:`series_mul`."""
    return moyal_coefficient(a, b, j)


moyal.max_shift = 64


# --- boundary classification ------------------------------------------------------

def boundary_grid(ntheta=64):
    th = 2 * np.pi * np.arange(ntheta) / ntheta
    return np.column_stack([np.cos(th), np.sin(th)])


def classify_boundary(series, ntheta=64, j_check=J_CHECK, tol_flat=TOL_FLAT, tol_boundary=TOL_BOUNDARY):
    """Numerically verified boundary class of a series of SmoothMaps.

    Flatness means every radial derivative of order 1..j_check vanishes at the
    sampled boundary points, for every nu-coefficient.
    """
    pts = boundary_grid(ntheta)
    ev = Evaluator(pts)
    coeffs = [c for c in series.coeffs]
    data = ev.data_many(coeffs, j_check)
    fact = np.cumprod([1.0] + list(range(1, j_check + 1)))
    for d in data:
        radial = Jet2D(pts, j_check, d).directional(pts)
        scale = fact[1:, None, None, None] * radial[1:]
        if np.abs(scale).max(initial=0.0) >= tol_flat:
            return GENERAL
    return _class_from_values([d[0] for d in data], tol_boundary)


def _class_from_values(values, tol_boundary=TOL_BOUNDARY):
    """Refine a flat class from boundary values (one (P, n, n) array per power)."""
    n = values[0].shape[-1]
    const = all(np.abs(v - v[0]).max() <= tol_boundary for v in values)
    if not const:
        return FLAT_LOOP
    ident = np.abs(values[0] - np.eye(n)).max() <= tol_boundary and all(
        np.abs(v).max() <= tol_boundary for v in values[1:]
    )
    return FLAT_IDENTITY if ident else FLAT_CONSTANT


def _product_class(a, b):
    if GENERAL in (a, b):
        return GENERAL
    if a == b == FLAT_IDENTITY:
        return FLAT_IDENTITY
    if max(_RANK[a], _RANK[b]) <= _RANK[FLAT_CONSTANT]:
        return FLAT_CONSTANT
    return FLAT_LOOP


def _sum_class(a, b):
    if GENERAL in (a, b):
        return GENERAL
    if max(_RANK[a], _RANK[b]) <= _RANK[FLAT_CONSTANT]:
        return FLAT_CONSTANT
    return FLAT_LOOP


# --- elements ---------------------------------------------------------------------

class StarElement:
    """An element of the deformed algebra: a nu-series of SmoothMaps.

    Parameters
    ----------
    series : NuSeries
        Coefficients are SmoothMaps of a common size; ``p_min`` must be 0.
    boundary : str, optional
        Boundary class.  When omitted it is verified numerically; operations
        of this module pass the class obtained by their propagation rules.
    """

    __slots__ = ("series", "boundary")

    def __init__(self, series, boundary=None):
        if series.p_min < 0:
            raise ValueError("algebra elements carry no negative powers of nu")
        ns = {c.n for c in series.coeffs}
        if len(ns) != 1:
            raise DimensionMismatch(f"coefficients have mixed sizes {sorted(ns)}")
        self.series = series
        self.boundary = classify_boundary(series) if boundary is None else boundary

    @classmethod
    def from_map(cls, f, K=DEFAULT_K, boundary=None):
        """Zero-order element (no nu corrections)."""
        return cls(NuSeries.constant(f, K), boundary)

    @classmethod
    def from_coeffs(cls, coeffs, K=DEFAULT_K, boundary=None):
        """From {power: SmoothMap}; missing powers are zero."""
        n = next(iter(coeffs.values())).n
        return cls(NuSeries.from_dict(coeffs, K, zero=E.zero(n)), boundary)

    @classmethod
    def identity(cls, n, K=DEFAULT_K):
        return cls.from_map(E.identity(n), K, FLAT_IDENTITY)

    @classmethod
    def constant(cls, A, K=DEFAULT_K):
        A = np.atleast_2d(np.asarray(A, dtype=complex))
        ident = np.allclose(A, np.eye(len(A)), rtol=0, atol=TOL_BOUNDARY)
        return cls.from_map(E.Const(A), K, FLAT_IDENTITY if ident else FLAT_CONSTANT)

    @property
    def n(self):
        return self.series.coeffs[0].n

    @property
    def K(self):
        return self.series.K

    def __getitem__(self, p):
        return self.series[p]

    @property
    def is_zero_order(self):
        return all(c.is_zero for c in self.series.coeffs[1:])

    def truncate(self, K):
        return StarElement(self.series.truncate(K), self.boundary)

    def verify(self, ntheta=64, **kw):
        """Recompute the boundary class numerically."""
        return classify_boundary(self.series, ntheta, **kw)

    def values(self, points, powers=None, evaluator=None):
        """{power: (P, n, n) values} sharing one evaluation of the DAG."""
        powers = list(self.series.powers) if powers is None else list(powers)
        ev = evaluator or Evaluator(points)
        data = ev.data_many([self.series[p] for p in powers], 0)
        return {p: d[0] for p, d in zip(powers, data)}

    # --- arithmetic -------------------------------------------------------------
    def __add__(self, other):
        return StarElement(series_add(self.series, other.series), _sum_class(self.boundary, other.boundary))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scaled(-1.0)

    def scaled(self, c):
        b = self.boundary
        if b == FLAT_IDENTITY and c != 1:
            b = FLAT_CONSTANT
        return StarElement(self.series.map(lambda f: E.scale(c, f)), b)

    def __mul__(self, other):
        if isinstance(other, StarElement):
            return star_product(self, other)
        return self.scaled(other)

    def __rmul__(self, c):
        return self.scaled(c)

    def __repr__(self):
        return f"StarElement(n={self.n}, K={self.K}, boundary={self.boundary})"


def star_product(f, g):
    """f * g with nu**m coefficient sum_{p+q+j=m} C_j(f_p, g_q)."""
    if f.n != g.n:
        raise DimensionMismatch(f"star product of sizes {f.n} and {g.n}")
    return StarElement(series_mul(f.series, g.series, moyal), _product_class(f.boundary, g.boundary))


def star_commutator(f, g):
    return star_product(f, g) - star_product(g, f)


def _check_points(quad):
    if quad is None:
        quad = DiskQuadrature(12, 16, 1)
    return np.vstack([quad.points, quad.boundary_points])


def star_inverse(f, quad=None, cond_max=1e12):
    """Inverse with f * result = 1 + O(nu**(K+1)).

    The zeroth coefficient of the result is the pointwise matrix inverse.
    Invertibility of f_0 is checked on the nodes of ``quad`` (a coarse default
    grid including the boundary circle when omitted).
    """
    f0 = f[0]
    try:
        vals = Evaluator(_check_points(quad), cond_max=cond_max).data(f0, 0)[0]
        kernels.check_invertible(vals, cond_max)
    except (SingularMatrix, np.linalg.LinAlgError) as exc:
        raise SingularZerothOrder(str(exc)) from exc
    inv = series_inverse(f.series, E.inverse(f0), moyal)
    return StarElement(inv, f.boundary)


def _pinned(f):
    """Wrap coefficients whose derivatives would be rewritten onto uncached
    descendants, so that later derivative nodes hit the evaluation cache."""
    def pin(c):
        if isinstance(c, (E.ScalarScale, E.PartialDerivative)):
            return E.Sum((c,), c.n)
        return c
    return StarElement(f.series.map(pin), f.boundary)


def star_exp(X, tol_tail=1e-14, quad=None, n_max=N_EXP_MAX):
    """sum_n X**n / n! with the star power, summed until the tail is negligible.

    Each new term is ``term * (X / n)``; its coefficients are evaluated on the
    quadrature nodes plus the boundary circle, keeping only the previous term
    and X in the evaluation cache, so the cost per term does not grow.
    Summation stops once every coefficient's sup-norm increment is below
    ``tol_tail``.
    """
    if quad is None:
        quad = DiskQuadrature()
    pts = np.vstack([quad.points, quad.boundary_points])
    nb = len(quad.boundary_points)
    K, n = X.K, X.n
    ev = Evaluator(pts)
    xroots = [X[p] for p in range(K + 1)]
    ev.data_many(xroots, [K - p for p in range(K + 1)])

    one = StarElement.identity(n, K)
    terms = [one]
    bvals = [np.broadcast_to(np.eye(n), (nb, n, n)).astype(complex)] + [np.zeros((nb, n, n), complex)] * K
    term = one
    for k in range(1, n_max + 1):
        term = _pinned(star_product(term, X.scaled(1.0 / k)))
        roots = [term[p] for p in range(K + 1)]
        data = ev.data_many(roots, [K - p for p in range(K + 1)])
        ev.retain(roots + xroots)
        terms.append(term)
        inc = 0.0
        for p, d in enumerate(data):
            inc = max(inc, float(np.abs(d[0]).max(initial=0.0)))
            bvals[p] = bvals[p] + d[0][-nb:]
        if inc < tol_tail:
            break
    else:
        raise NoConvergence(f"star exponential not converged after {n_max} terms")
    coeffs = tuple(E.add_or_zero([t[p] for t in terms], n) for p in range(K + 1))
    boundary = X.boundary
    if boundary != GENERAL:
        boundary = _class_from_values(bvals)
    return StarElement(NuSeries(coeffs, 0), boundary)
