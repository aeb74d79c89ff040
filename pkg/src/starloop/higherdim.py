"""Tensoring the disk algebra with a finite algebra carrying a trace.

Coefficients are matrices on C^n (x) C^d, indexed (i, a) -> i * d + a.  A
trace on the d x d factor combines with the matrix trace on the n x n factor.
The fuzzy sphere of spin j is the d = 2j + 1 irreducible representation of
su(2) with generators x, y, z satisfying [x, y] = z and cyclic.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, InvalidSpin
from .nuseries import NuSeries
from .jets.expr import Evaluator


class TraceFunctional:
    """A linear functional on d x d matrices, expected to be tracial."""

    def __init__(self, d, fn=None, name="matrix trace"):
        self.d = int(d)
        self._fn = fn or (lambda a: np.trace(a, axis1=-2, axis2=-1))
        self.name = name

    def __repr__(self):
        return f"TraceFunctional({self.name}, d={self.d})"

    def __call__(self, a):
        a = np.asarray(a)
        if a.shape[-2:] != (self.d, self.d):
            raise DimensionMismatch(f"expected {self.d}x{self.d} matrices, got {a.shape[-2:]}")
        return self._fn(a)

    def combined(self, a, n):
        """(tr_n (x) tr_S)(a) for a of shape (..., n d, n d)."""
        a = np.asarray(a)
        if a.shape[-1] != n * self.d:
            raise DimensionMismatch(f"expected size {n * self.d}, got {a.shape[-1]}")
        blocks = a.reshape(a.shape[:-2] + (n, self.d, n, self.d))
        diag = np.stack([blocks[..., i, :, i, :] for i in range(n)], axis=-3)
        return self(diag).sum(axis=-1)

    def traciality_residual(self, rng, trials=5):
        worst = 0.0
        for _ in range(trials):
            a, b = (rng.standard_normal((2, self.d, self.d)) + 1j * rng.standard_normal((2, self.d, self.d)))
            worst = max(worst, abs(self(a @ b) - self(b @ a)))
        return worst


def _spin(j):
    twice = Fraction(j) * 2
    if twice.denominator != 1 or twice < 0:
        raise InvalidSpin(f"spin {j} is not a nonnegative half-integer")
    return Fraction(int(twice), 2)


@dataclass(frozen=True, eq=False)
class FuzzyAlgebra:
    j: Fraction
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray

    @property
    def d(self):
        return self.x.shape[0]

    def casimir(self):
        return self.x @ self.x + self.y @ self.y + self.z @ self.z

    def commutation_residual(self):
        def c(a, b):
            return a @ b - b @ a

        return max(
            np.abs(c(self.x, self.y) - self.z).max(),
            np.abs(c(self.y, self.z) - self.x).max(),
            np.abs(c(self.z, self.x) - self.y).max(),
        )

    def casimir_residual(self):
        jj = float(self.j) * (float(self.j) + 1)
        return float(np.abs(self.casimir() + jj * np.eye(self.d)).max())

    def trace(self):
        return TraceFunctional(self.d, name=f"fuzzy sphere j={self.j}")


def su2_irrep(j):
    """x = -i J_x, y = -i J_y, z = -i J_z in the spin-j representation."""
    j = _spin(j)
    d = int(2 * j + 1)
    m = np.array([float(j) - k for k in range(d)])
    Jz = np.diag(m).astype(complex)
    # <m+1| J_+ |m> = sqrt(j(j+1) - m(m+1))
    jf = float(j)
    up = np.sqrt(np.maximum(jf * (jf + 1) - m[1:] * (m[1:] + 1), 0.0))
    Jp = np.diag(up, 1).astype(complex)
    Jm = Jp.conj().T
    Jx, Jy = (Jp + Jm) / 2, (Jp - Jm) / 2j
    return FuzzyAlgebra(j, -1j * Jx, -1j * Jy, -1j * Jz)


@dataclass(frozen=True)
class TensorTrace:
    """Both normalizations of the combined trace of a disk element."""

    laurent: NuSeries
    plain: NuSeries


def tensor_trace(f, tr_S, quad, n=None):
    """(1/2 pi) int_D (tr_n (x) tr_S) f_m per power.

    ``laurent`` carries the 1/nu of TR_nu (coefficient of f_m at nu**(m-1));
    ``plain`` keeps the powers of f (coefficient at nu**m).
    """
    n = f.n // tr_S.d if n is None else n
    if n * tr_S.d != f.n:
        raise DimensionMismatch(f"element size {f.n} is not n * {tr_S.d}")
    ev = Evaluator(quad.points)
    live = [p for p in f.series.powers if not f[p].is_zero]
    data = dict(zip(live, ev.data_many([f[p] for p in live], 0)))
    out = []
    for p in f.series.powers:
        out.append(complex(quad.integrate(tr_S.combined(data[p][0], n)) / (2 * np.pi)) if p in data else 0j)
    return TensorTrace(NuSeries(tuple(out), -1), NuSeries(tuple(out), 0))


class MatrixLoop:
    """sum_m A_m exp(i m theta) with (n d) x (n d) coefficients."""

    def __init__(self, modes, size=None):
        self.modes = {int(m): np.atleast_2d(np.asarray(A, dtype=complex)) for m, A in modes.items()}
        sizes = {A.shape[0] for A in self.modes.values()}
        if size is not None:
            sizes.add(int(size))
        if len(sizes) != 1:
            raise DimensionMismatch(f"inconsistent coefficient sizes {sorted(sizes)}")
        self.size = sizes.pop()

    def coefficient(self, m):
        return self.modes.get(m, np.zeros((self.size, self.size), dtype=complex))

    def bracket(self, other):
        out = {}
        for m, A in self.modes.items():
            for k, B in other.modes.items():
                out[m + k] = out.get(m + k, 0) + A @ B - B @ A
        return MatrixLoop(out, self.size)

    def __add__(self, other):
        keys = set(self.modes) | set(other.modes)
        return MatrixLoop({m: self.coefficient(m) + other.coefficient(m) for m in keys}, self.size)

    def scaled(self, c):
        return MatrixLoop({m: c * A for m, A in self.modes.items()}, self.size)


@dataclass(frozen=True)
class LoopCocycleS:
    paper8: complex
    paper13: complex
    normalization: str

    @property
    def value(self):
        return self.paper8 if self.normalization == "paper8" else self.paper13


def loop_cocycle_S(f, g, tr_S, n=1, normalization="paper8"):
    """Mode sum for the contour integral of (tr_n (x) tr_S)(f dg).

    ``paper13`` is (1/2 pi) contour int = sum_k i k tr(A_-k B_k); ``paper8``
    uses 1/(2 pi i) instead, i.e. sum_k k tr(A_-k B_k).
    """
    if normalization not in ("paper8", "paper13"):
        raise ValueError("normalization must be 'paper8' or 'paper13'")
    if f.size != g.size or f.size != n * tr_S.d:
        raise DimensionMismatch("loop sizes do not match n * d")
    c8 = sum(k * tr_S.combined(f.coefficient(-k) @ B, n) for k, B in g.modes.items())
    c8 = complex(c8)
    return LoopCocycleS(c8, 1j * c8, normalization)
