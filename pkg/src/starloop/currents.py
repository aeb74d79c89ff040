"""Currents on the flat 3-torus at a finite Fourier cutoff.

Basis vectors are indexed (mode n, spin s, gauge g) -> (k * 2 + s) * n_g + g,
where k enumerates the modes n in Z^3 with |n|_inf <= cutoff.  The Dirac
operator is block diagonal with blocks sigma . n (tensor the gauge identity),
and a current X(x) = sum_q A_q exp(i q . x) acts by convolution of modes.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import CutoffTooLarge, DimensionMismatch

SIZE_LIMIT = 20000
PAULI = np.array([[[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]]], dtype=complex)


def sigma_dot(v):
    return np.tensordot(np.asarray(v, dtype=float), PAULI, axes=1)


class SpectralTruncation3D:
    """Mode window, Dirac operator D and sign operator eps = D / |D|.

    The kernel block n = 0 gets eps = ``zero_mode_sign`` times the identity.
    """

    def __init__(self, cutoff, n_g=1, zero_mode_sign=1, size_limit=SIZE_LIMIT):
        if cutoff < 1:
            raise ValueError("cutoff must be at least 1")
        self.cutoff = int(cutoff)
        self.n_g = int(n_g)
        size = 2 * self.n_g * (2 * self.cutoff + 1) ** 3
        if size > size_limit:
            raise CutoffTooLarge(f"matrix size {size} exceeds the limit {size_limit}")
        r = range(-self.cutoff, self.cutoff + 1)
        self.modes = [tuple(n) for n in product(r, r, r)]
        self.index = {n: k for k, n in enumerate(self.modes)}
        self.block = 2 * self.n_g
        self.size = size
        eye_g = np.eye(self.n_g)
        self.D = np.zeros((size, size), dtype=complex)
        self.eps = np.zeros((size, size), dtype=complex)
        norms = np.zeros(size)
        for k, n in enumerate(self.modes):
            sl = self._slice(k)
            sn = sigma_dot(n)
            nn = float(np.dot(n, n))
            self.D[sl, sl] = np.kron(sn, eye_g)
            self.eps[sl, sl] = np.kron(sn / np.sqrt(nn), eye_g) if nn > 0 else zero_mode_sign * np.eye(self.block)
            norms[sl] = nn
        self.d2 = norms  # diagonal of D**2

    def __repr__(self):
        return f"SpectralTruncation3D(cutoff={self.cutoff}, n_g={self.n_g}, size={self.size})"

    def _slice(self, k):
        return slice(k * self.block, (k + 1) * self.block)

    def invariants(self):
        """Residuals of eps**2 = 1, hermiticity of D and eps, and [D, eps] = 0."""
        eye = np.eye(self.size)
        return {
            "eps_squared": float(np.abs(self.eps @ self.eps - eye).max()),
            "D_hermitian": float(np.abs(self.D - self.D.conj().T).max()),
            "eps_hermitian": float(np.abs(self.eps - self.eps.conj().T).max()),
            "D_eps_commute": float(np.abs(self.D @ self.eps - self.eps @ self.D).max()),
        }


class CurrentOperator:
    """Fourier data {q: A_q} of a map X from the torus to n_g x n_g matrices."""

    def __init__(self, modes, n_g=None):
        self.modes = {tuple(int(c) for c in q): np.atleast_2d(np.asarray(A, dtype=complex)) for q, A in modes.items()}
        sizes = {A.shape[0] for A in self.modes.values()}
        if n_g is not None:
            sizes.add(int(n_g))
        if len(sizes) != 1:
            raise DimensionMismatch(f"inconsistent gauge sizes {sorted(sizes)}")
        self.n_g = sizes.pop()

    def __repr__(self):
        return f"CurrentOperator(modes={sorted(self.modes)}, n_g={self.n_g})"

    def bracket(self, other):
        out = {}
        for q, A in self.modes.items():
            for p, B in other.modes.items():
                s = tuple(a + b for a, b in zip(q, p))
                out[s] = out.get(s, 0) + A @ B - B @ A
        return CurrentOperator(out, self.n_g)

    def anti_hermitian_residual(self, T):
        M = self.matrix(T)
        return float(np.abs(M + M.conj().T).max())

    def matrix(self, T):
        """Compression to the mode window: block (n + q, n) = I_2 (x) A_q."""
        if T.n_g != self.n_g:
            raise DimensionMismatch("gauge dimension differs from the truncation")
        M = np.zeros((T.size, T.size), dtype=complex)
        for q, A in self.modes.items():
            blk = np.kron(np.eye(2), A)
            for k, n in enumerate(T.modes):
                tgt = T.index.get(tuple(a + b for a, b in zip(n, q)))
                if tgt is not None:
                    M[T._slice(tgt), T._slice(k)] += blk
        return M


def _as_matrix(X, T):
    M = X.matrix(T) if isinstance(X, CurrentOperator) else np.asarray(X)
    if M.shape != (T.size, T.size):
        raise DimensionMismatch(f"operator of shape {M.shape} does not fit size {T.size}")
    return M


def deform(X, T, sign=1):
    """X + sign (1 / (4 (D**2 + 1))) [D, [D, X]]; sign = +1 is the defining choice."""
    M = _as_matrix(X, T)
    c = T.D @ M - M @ T.D
    dd = T.D @ c - c @ T.D
    return M + sign * dd / (4.0 * (T.d2 + 1.0))[:, None]


def deform_block(A, q, n, sign=1):
    """Closed form of the (n + q, n) block of the deformed single mode A exp(i q.x).

    Uses (sigma.a)(sigma.b) + (sigma.b)(sigma.a) = 2 a.b, which turns
    [D, [D, X]] into A (|q|**2 + [sigma.n, sigma.q]) on that block.
    """
    q, n = np.asarray(q, dtype=float), np.asarray(n, dtype=float)
    sn, sq = sigma_dot(n), sigma_dot(q)
    factor = np.eye(2) + sign * (np.dot(q, q) * np.eye(2) + sn @ sq - sq @ sn) / (4 * (np.dot(n + q, n + q) + 1))
    return np.kron(factor, np.atleast_2d(A))


def lundberg_cocycle(X, Y, eps):
    """(1/4) tr eps [eps, X] [eps, Y]."""
    X, Y, eps = (np.asarray(a) for a in (X, Y, eps))
    if not X.shape == Y.shape == eps.shape:
        raise DimensionMismatch("operators and sign operator must have equal shapes")
    cx = eps @ X - X @ eps
    cy = eps @ Y - Y @ eps
    return complex(np.trace(eps @ cx @ cy) / 4)


def shift_model(cutoff):
    """1D sanity model: D = diag(n), |n| <= cutoff, eps(0) = +1."""
    n = np.arange(-cutoff, cutoff + 1)
    return np.diag(n).astype(complex), np.diag(np.where(n >= 0, 1.0, -1.0)).astype(complex)


def shift_operator(m, cutoff):
    """E(m) e_n = e_{n+m} inside the window."""
    size = 2 * cutoff + 1
    return np.eye(size, k=-m, dtype=complex)


def operator_norm(M):
    return float(np.linalg.norm(M, 2))


@dataclass(frozen=True)
class DefectDiagnostics:
    cutoff: int
    weighted_defect: float
    weighted_commutator: float


def commutator_defect(X, Y, T, sign=1):
    """Z = [X~, Y~] - ([X, Y])~ with (I + D**2)-weighted operator norms."""
    Mx, My = _as_matrix(X, T), _as_matrix(Y, T)
    dx, dy = deform(Mx, T, sign), deform(My, T, sign)
    comm = dx @ dy - dy @ dx
    Z = comm - deform(Mx @ My - My @ Mx, T, sign)
    w = (1.0 + T.d2)[:, None]
    return Z, DefectDiagnostics(T.cutoff, operator_norm(w * Z), operator_norm(w * comm))


def defect_sweep(X, Y, cutoffs=(1, 2, 3), sign=1):
    out = []
    for lam in cutoffs:
        out.append(commutator_defect(X, Y, SpectralTruncation3D(lam, X.n_g), sign)[1])
    return out


@dataclass(frozen=True)
class HSRow:
    cutoff: int
    hs_plain: float
    hs_deformed: float


def hs_norm_comparison(X, cutoffs, sign=1):
    """Rows (cutoff, ||[eps, X]||_HS, ||[eps, X~]||_HS) over ascending cutoffs."""
    cutoffs = list(cutoffs)
    if cutoffs != sorted(cutoffs):
        raise ValueError("cutoffs must be ascending")
    rows = []
    for lam in cutoffs:
        T = SpectralTruncation3D(lam, X.n_g)
        M = X.matrix(T)
        Xd = deform(M, T, sign)
        rows.append(HSRow(lam, float(np.linalg.norm(T.eps @ M - M @ T.eps)),
                          float(np.linalg.norm(T.eps @ Xd - Xd @ T.eps))))
    return rows


def hs_trend_gaps(rows):
    """Ratios of successive increments of the squared norms, plain over deformed."""
    gaps = []
    for a, b in zip(rows[:-1], rows[1:]):
        dp = b.hs_plain**2 - a.hs_plain**2
        dd = b.hs_deformed**2 - a.hs_deformed**2
        gaps.append(dp / dd if dd != 0 else np.inf)
    return gaps


def hs_trend_holds(rows):
    """Every ratio exceeds 1 and the ratios strictly increase."""
    g = hs_trend_gaps(rows)
    return all(x > 1 for x in g) and all(b > a for a, b in zip(g[:-1], g[1:]))


def deformation_shell_norms(X, cutoffs, sign=1):
    """Largest block norm of X~ - X over source modes on the shell |n|_inf = cutoff.

    The correction blocks fall off like 1 / |n|, so the sequence over
    ascending cutoffs should decrease.
    """
    out = []
    for lam in cutoffs:
        T = SpectralTruncation3D(lam, X.n_g)
        M = X.matrix(T)
        delta = deform(M, T, sign) - M
        worst = 0.0
        for k, n in enumerate(T.modes):
            if max(abs(c) for c in n) != lam:
                continue
            col = delta[:, T._slice(k)]
            worst = max(worst, float(np.linalg.norm(col, 2)))
        out.append(worst)
    return out


def zero_mode_sensitivity(X, cutoffs, sign=1):
    """Change of ||[eps, X~]||_HS**2 when the kernel block of eps is flipped to -1."""
    out = []
    for lam in cutoffs:
        vals = []
        for z in (1, -1):
            T = SpectralTruncation3D(lam, X.n_g, zero_mode_sign=z)
            Xd = deform(X.matrix(T), T, sign)
            vals.append(float(np.linalg.norm(T.eps @ Xd - Xd @ T.eps)) ** 2)
        out.append(vals[1] - vals[0])
    return out
