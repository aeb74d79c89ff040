"""Truncated Laurent/power series in the formal deformation parameter nu.

Coefficients can be numbers, numpy matrices or :class:`SmoothMap` nodes.
Multiplication is driven by a *graded* coefficient product
``mul(a, b, j)``: the contribution of ``a * b`` at an extra power ``nu**j``
(``None`` when it vanishes).  The pointwise product only has ``j = 0``;
the Moyal product of the disk algebra supplies all ``j <= mul.max_shift``.
nu itself is never given a numerical value.
"""

from dataclasses import dataclass
from functools import singledispatch
from numbers import Number

import numpy as np

from .errors import NotInvertible, NotUnipotent, TruncationUnderflow
from .jets import expr as E
from .jets.expr import SmoothMap

DEFAULT_K = 2


# --- coefficient-algebra helpers ------------------------------------------------

@singledispatch
def zero_like(x):
    raise TypeError(f"unsupported coefficient type {type(x).__name__}")


@zero_like.register
def _(x: Number):
    return 0.0 * x


@zero_like.register
def _(x: np.ndarray):
    return np.zeros_like(x, dtype=complex)


@zero_like.register
def _(x: SmoothMap):
    return E.zero(x.n)


@singledispatch
def one_like(x):
    raise TypeError(f"unsupported coefficient type {type(x).__name__}")


@one_like.register
def _(x: Number):
    return 1.0 + 0.0 * x


@one_like.register
def _(x: np.ndarray):
    return np.eye(x.shape[0], dtype=complex)


@one_like.register
def _(x: SmoothMap):
    return E.identity(x.n)


@singledispatch
def is_zero(x):
    return False


@is_zero.register
def _(x: Number):
    return x == 0


@is_zero.register
def _(x: np.ndarray):
    return not x.any()


@is_zero.register
def _(x: SmoothMap):
    return x.is_zero


@singledispatch
def is_identity(x, tol=1e-12):
    return False


@is_identity.register
def _(x: Number, tol=1e-12):
    return abs(x - 1) <= tol


@is_identity.register
def _(x: np.ndarray, tol=1e-12):
    return np.abs(x - np.eye(x.shape[0])).max() <= tol


@is_identity.register
def _(x: SmoothMap, tol=1e-12):
    return isinstance(x, E.Const) and np.abs(x.value - np.eye(x.n)).max() <= tol


@singledispatch
def invert(x):
    raise TypeError(f"unsupported coefficient type {type(x).__name__}")


@invert.register
def _(x: Number):
    if x == 0:
        raise NotInvertible("zeroth-order coefficient is zero")
    return 1.0 / x


@invert.register
def _(x: np.ndarray):
    if np.linalg.cond(x) > 1e12:
        raise NotInvertible("zeroth-order coefficient is singular")
    return np.linalg.inv(x)


@invert.register
def _(x: SmoothMap):
    return E.inverse(x)


def pointwise(a, b, j=0):
    """Undeformed product: only the nu-shift j = 0 contributes."""
    if j != 0:
        return None
    if isinstance(a, (SmoothMap, np.ndarray)) and isinstance(b, (SmoothMap, np.ndarray)):
        return a @ b
    return a * b


pointwise.max_shift = 0


def _sum(terms, zero):
    terms = [t for t in terms if t is not None and not is_zero(t)]
    if not terms:
        return zero
    if isinstance(zero, SmoothMap):
        return E.add(*terms)
    total = terms[0]
    for t in terms[1:]:
        total = total + t
    return total


# --- the series type ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class NuSeries:
    """sum_{p = p_min}^{K} coeffs[p - p_min] nu**p + O(nu**(K+1))."""

    coeffs: tuple
    p_min: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs:
            raise ValueError("a series needs at least one coefficient")
        if self.p_min < -1:
            raise TruncationUnderflow("only the nu**-1 Laurent slot is supported")

    @classmethod
    def constant(cls, c, K=DEFAULT_K):
        z = zero_like(c)
        return cls((c,) + (z,) * K, 0)

    @classmethod
    def from_dict(cls, terms, K=DEFAULT_K, p_min=0, zero=None):
        """Build from {power: coefficient}; missing powers are zero."""
        if zero is None:
            zero = zero_like(next(iter(terms.values())))
        for p in terms:
            if p < p_min or p > K:
                raise ValueError(f"power {p} outside [{p_min}, {K}]")
        return cls(tuple(terms.get(p, zero) for p in range(p_min, K + 1)), p_min)

    @property
    def K(self):
        return self.p_min + len(self.coeffs) - 1

    @property
    def powers(self):
        return range(self.p_min, self.K + 1)

    @property
    def zero(self):
        return zero_like(self.coeffs[0])

    def __getitem__(self, p):
        if p > self.K:
            raise IndexError(f"power {p} lies above the truncation order {self.K}")
        if p < self.p_min:
            return self.zero
        return self.coeffs[p - self.p_min]

    def items(self):
        return zip(self.powers, self.coeffs)

    def map(self, fn):
        return NuSeries(tuple(fn(c) for c in self.coeffs), self.p_min)

    def truncate(self, K):
        if K > self.K:
            raise ValueError("cannot extend a truncated series")
        return NuSeries(self.coeffs[: K - self.p_min + 1], self.p_min)

    def __add__(self, other):
        return series_add(self, other)

    def __sub__(self, other):
        return series_add(self, -other)

    def __neg__(self):
        return self.map(lambda c: -1.0 * c)

    def __mul__(self, c):
        if isinstance(c, NuSeries):
            return series_mul(self, c)
        return self.map(lambda x: c * x)

    __rmul__ = __mul__

    def __repr__(self):
        body = ", ".join(f"nu^{p}: {c!r}" for p, c in self.items())
        return f"NuSeries({body}; K={self.K})"


def series_add(a, b):
    K = min(a.K, b.K)
    lo = min(a.p_min, b.p_min)
    z = a.zero
    return NuSeries(tuple(_sum([a[p], b[p]], z) for p in range(lo, K + 1)), lo)


def series_mul(a, b, mul=pointwise):
    """Truncated convolution (a * b)_m = sum_{p+q+j=m} mul(a_p, b_q, j)."""
    lo = a.p_min + b.p_min
    if lo < -1:
        raise TruncationUnderflow("product would need powers below nu**-1")
    K = min(a.K + b.p_min, b.K + a.p_min)
    jmax = getattr(mul, "max_shift", 0)
    z = _product_zero(a, b, mul)
    out = []
    for m in range(lo, K + 1):
        terms = []
        for p in a.powers:
            for q in b.powers:
                j = m - p - q
                if 0 <= j <= jmax:
                    x, y = a[p], b[q]
                    if is_zero(x) or is_zero(y):
                        continue
                    terms.append(mul(x, y, j))
        out.append(_sum(terms, z))
    return NuSeries(tuple(out), lo)


def _product_zero(a, b, mul):
    x, y = a.coeffs[0], b.coeffs[0]
    if isinstance(x, SmoothMap) or isinstance(y, SmoothMap):
        return E.zero(max(getattr(x, "n", 1), getattr(y, "n", 1)))
    return zero_like(mul(x, y, 0))


def series_inverse(a, inv0=None, mul=pointwise):
    """Inverse with a * result = 1 + O(nu**(K+1)), solved order by order."""
    if a.p_min != 0:
        raise NotInvertible("series must start at nu**0 to be invertible")
    a0 = a[0]
    if inv0 is None:
        inv0 = invert(a0)
    jmax = getattr(mul, "max_shift", 0)
    z = a.zero if not isinstance(inv0, SmoothMap) else E.zero(inv0.n)
    b = [inv0]
    for m in range(1, a.K + 1):
        rest = []
        for p in a.powers:
            for q in range(0, m):
                j = m - p - q
                if 0 <= j <= jmax and not (is_zero(a[p]) or is_zero(b[q])):
                    rest.append(mul(a[p], b[q], j))
        r = _sum(rest, z)
        b.append(z if is_zero(r) else -1.0 * mul(inv0, r, 0))
    return NuSeries(tuple(b), 0)


def series_log_unipotent(k, mul=pointwise):
    """log k = sum_{n=1}^{K} (-1)**(n+1) (k - 1)**n / n for k = 1 + O(nu)."""
    if k.p_min != 0 or not is_identity(k[0]):
        raise NotUnipotent("zeroth-order coefficient must be exactly the identity")
    x = NuSeries((k.zero,) + k.coeffs[1:], 0)
    out = x
    power = x
    for n in range(2, k.K + 1):
        power = series_mul(power, x, mul)
        out = series_add(out, power * ((-1) ** (n + 1) / n))
    return out


def series_exp_nilpotent(x, mul=pointwise):
    """exp of a series without constant term (finite sum at truncation K)."""
    if x.p_min < 0 or not is_zero(x[0]):
        raise ValueError("exp needs a series without constant term")
    one = one_like(x[1] if x.K >= 1 else x[0])
    total = NuSeries.constant(one, x.K)
    power = NuSeries.constant(one, x.K)
    fact = 1.0
    for n in range(1, x.K + 1):
        power = series_mul(power, x, mul)
        fact *= n
        total = series_add(total, power * (1.0 / fact))
    return total
