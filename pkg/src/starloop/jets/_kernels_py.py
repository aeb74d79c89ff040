"""Pure numpy jet kernels.

Jet data layout is ``(S, P, n, n)``: slot, point, matrix row, matrix column.
A matrix size of 1 broadcasts against any other size.
"""

import numpy as np

from ..errors import SingularMatrix
from ._tables import degree_offset, n_slots, shift_targets


def jet_mul(a, b, order):
    S = n_slots(order)
    P = a.shape[1]
    n = max(a.shape[2], b.shape[2])
    scalar = a.shape[2] == 1 or b.shape[2] == 1
    out = np.zeros((S, P, n, n), dtype=complex)
    targets = shift_targets(order)
    bz = [b[s].any() for s in range(S)]
    for s1 in range(S):
        a1 = a[s1]
        if not a1.any():
            continue
        tgt = targets[s1]
        k = len(tgt)
        live = [i for i in range(k) if bz[i]]
        if not live:
            continue
        if len(live) == k:
            bb = b[:k]
        else:
            bb = b[live]
            tgt = tgt[live]
        if scalar:
            out[tgt] += a1 * bb
        else:
            out[tgt] += np.matmul(a1, bb)
    return out


def jet_inv(a, order, inv0):
    """Inverse jet given the pointwise inverse ``inv0`` of the value slot.

    Solves F G = 1 degree by degree: G_s = -G_0 sum_{s1 != 0} F_s1 G_{s-s1}.
    """
    S = n_slots(order)
    P, n = a.shape[1], a.shape[2]
    g = np.zeros((S, P, n, n), dtype=complex)
    g[0] = inv0
    live = [a[s].any() for s in range(S)]
    for d in range(1, order + 1):
        acc = np.zeros((d + 1, P, n, n), dtype=complex)
        for d1 in range(1, d + 1):
            d2 = d - d1
            o2 = degree_offset(d2)
            blk = g[o2:o2 + d2 + 1]
            for b1 in range(d1 + 1):
                s1 = degree_offset(d1) + b1
                if live[s1]:
                    acc[b1:b1 + d2 + 1] += np.matmul(a[s1], blk)
        o = degree_offset(d)
        g[o:o + d + 1] = -np.matmul(g[0], acc)
    return g


def check_invertible(values, cond_max):
    """Pointwise inverse of a stack of matrices with a condition-number guard.

    The guard is relative to the largest singular value over the whole
    stack, so a map that vanishes at some node (scalar multiples of the
    identity have pointwise condition number 1) is rejected as well.
    """
    sv = np.linalg.svd(values, compute_uv=False)
    top = sv[..., 0].max(initial=0.0)
    low = sv[..., -1]
    bad = ~np.isfinite(low) | (low * cond_max <= top)
    if bad.any() or top == 0:
        worst = top / low.min() if low.min() > 0 else np.inf
        raise SingularMatrix(f"matrix inverse requested where condition number reaches {worst:.3g} (cond_max={cond_max:.3g})")
    return np.linalg.inv(values)
