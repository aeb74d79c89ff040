"""Univariate truncated Taylor series, vectorized over expansion points.

A :class:`Taylor1D` holds ``c[k, p] = f^(k)(x_p) / k!`` for ``k <= order``.
The elementary functions below use the usual first-order recurrences
(``e' = a' e`` for exp and so on), which are exact in exact arithmetic.
"""

import numpy as np

from ..errors import DomainError

_EXP_UNDERFLOW = -740.0


class Taylor1D:
    __slots__ = ("c",)

    def __init__(self, c):
        self.c = np.asarray(c, dtype=complex)

    @classmethod
    def variable(cls, x0, order):
        x0 = np.atleast_1d(np.asarray(x0, dtype=complex))
        c = np.zeros((order + 1, x0.size), dtype=complex)
        c[0] = x0
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    @classmethod
    def constant(cls, value, order, npoints):
        c = np.zeros((order + 1, npoints), dtype=complex)
        c[0] = value
        return cls(c)

    @property
    def order(self):
        return self.c.shape[0] - 1

    @property
    def value(self):
        return self.c[0]

    def derivatives(self):
        """Plain derivatives ``f^(k)(x)`` (undo the 1/k! scaling)."""
        k = np.arange(self.order + 1)
        fact = np.cumprod(np.concatenate([[1.0], np.maximum(k[1:], 1)]))
        return self.c * fact[:, None]

    def _wrap(self, other):
        if isinstance(other, Taylor1D):
            return other
        return Taylor1D.constant(other, self.order, self.c.shape[1])

    def __add__(self, other):
        return Taylor1D(self.c + self._wrap(other).c)

    __radd__ = __add__

    def __neg__(self):
        return Taylor1D(-self.c)

    def __sub__(self, other):
        return Taylor1D(self.c - self._wrap(other).c)

    def __rsub__(self, other):
        return Taylor1D(self._wrap(other).c - self.c)

    def __mul__(self, other):
        if not isinstance(other, Taylor1D):
            return Taylor1D(self.c * other)
        return Taylor1D(_convolve(self.c, other.c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Taylor1D):
            return Taylor1D(self.c / other)
        return self * reciprocal(other)

    def __rtruediv__(self, other):
        return reciprocal(self) * other

    def __pow__(self, alpha):
        return power(self, alpha)


def _convolve(a, b):
    K = a.shape[0]
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=complex)
    for k in range(K):
        out[k] = np.einsum("ip,ip->p", a[: k + 1], b[k::-1])
    return out


def reciprocal(a):
    a0 = a.c[0]
    if np.any(a0 == 0):
        raise DomainError("reciprocal of a series with zero constant term")
    K = a.order
    r = np.zeros_like(a.c)
    r[0] = 1.0 / a0
    for k in range(1, K + 1):
        r[k] = -np.einsum("ip,ip->p", a.c[1 : k + 1], r[k - 1 :: -1]) / a0
    return Taylor1D(r)


def exp(a):
    K = a.order
    e = np.zeros_like(a.c)
    e[0] = np.exp(a.c[0])
    i = np.arange(1, K + 1)[:, None]
    for k in range(1, K + 1):
        e[k] = np.einsum("ip,ip->p", i[:k] * a.c[1 : k + 1], e[k - 1 :: -1]) / k
    return Taylor1D(e)


def log(a):
    a0 = a.c[0]
    if np.any(a0 == 0):
        raise DomainError("log of a series with zero constant term")
    K = a.order
    out = np.zeros_like(a.c)
    out[0] = np.log(a0)
    for k in range(1, K + 1):
        s = sum(i * out[i] * a.c[k - i] for i in range(1, k))
        out[k] = (a.c[k] - s / k) / a0
    return Taylor1D(out)


def power(a, alpha):
    """``a ** alpha`` for real alpha; the constant term must be nonzero."""
    a0 = a.c[0]
    if np.any(a0 == 0):
        raise DomainError("non-integer power of a series with zero constant term")
    K = a.order
    out = np.zeros_like(a.c)
    out[0] = a0**alpha
    for k in range(1, K + 1):
        s = sum((alpha * i - (k - i)) * a.c[i] * out[k - i] for i in range(1, k + 1))
        out[k] = s / (k * a0)
    return Taylor1D(out)


def sqrt(a):
    return power(a, 0.5)


def sincos(a):
    K = a.order
    s = np.zeros_like(a.c)
    c = np.zeros_like(a.c)
    s[0] = np.sin(a.c[0])
    c[0] = np.cos(a.c[0])
    for k in range(1, K + 1):
        da = np.arange(1, k + 1)[:, None] * a.c[1 : k + 1]
        s[k] = np.einsum("ip,ip->p", da, c[k - 1 :: -1]) / k
        c[k] = -np.einsum("ip,ip->p", da, s[k - 1 :: -1]) / k
    return Taylor1D(s), Taylor1D(c)


def sin(a):
    return sincos(a)[0]


def cos(a):
    return sincos(a)[1]


def flat_step(a):
    """Series of h(s) = exp(-1/s) for s > 0, identically zero for s <= 0.

    Expansion points are required to be real.  Points where exp(-1/s)
    underflows get the zero series, which is exact to double precision.
    """
    x0 = _real_values(a)
    live = x0 > 0
    live &= np.where(live, -1.0 / np.where(live, x0, 1.0), -np.inf) > _EXP_UNDERFLOW
    out = np.zeros_like(a.c)
    if live.any():
        sub = Taylor1D(a.c[:, live])
        out[:, live] = exp(-reciprocal(sub)).c
    return Taylor1D(out)


def smooth_transition(a):
    """h(s) / (h(s) + h(1 - s)): 0 for s <= 0, 1 for s >= 1, flat at both ends."""
    x0 = _real_values(a)
    out = np.zeros_like(a.c)
    out[0, x0 >= 1] = 1.0
    mid = (x0 > 0) & (x0 < 1)
    if mid.any():
        sub = Taylor1D(a.c[:, mid])
        h0 = flat_step(sub)
        h1 = flat_step(1.0 - sub)
        out[:, mid] = (h0 / (h0 + h1)).c
    return Taylor1D(out)


def _real_values(a, tol=1e-12):
    x0 = a.c[0]
    if np.any(np.abs(x0.imag) > tol * np.maximum(1.0, np.abs(x0.real))):
        raise DomainError("flat profile evaluated at a non-real argument")
    return x0.real
