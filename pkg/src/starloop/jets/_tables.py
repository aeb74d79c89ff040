"""Slot bookkeeping for bivariate truncated Taylor data.

Slots are ordered by total degree, then by the y-exponent, so that the data
of an order-M jet is always a prefix of the data of any higher-order jet:

    (0,0) | (1,0) (0,1) | (2,0) (1,1) (0,2) | ...
"""

from functools import lru_cache

import numpy as np


def n_slots(order):
    return (order + 1) * (order + 2) // 2


def degree_offset(d):
    return d * (d + 1) // 2


def slot(a, b):
    d = a + b
    return degree_offset(d) + b


@lru_cache(maxsize=None)
def exponents(order):
    """Tuple of (a, b) exponent pairs in slot order."""
    return tuple((d - b, b) for d in range(order + 1) for b in range(d + 1))


@lru_cache(maxsize=None)
def degrees(order):
    return np.array([a + b for a, b in exponents(order)], dtype=np.intp)


@lru_cache(maxsize=None)
def pair_table(order):
    """All (s1, s2, s) with s the slot of the product monomial, sorted by s.

    Returned as three read-only int arrays; the Cython kernels iterate over
    them directly.
    """
    exps = exponents(order)
    rows = []
    for s1, (a1, b1) in enumerate(exps):
        for s2, (a2, b2) in enumerate(exps):
            if a1 + b1 + a2 + b2 <= order:
                rows.append((slot(a1 + a2, b1 + b2), s1, s2))
    rows.sort()
    arr = np.array(rows, dtype=np.intc).reshape(-1, 3)
    s, s1, s2 = (np.ascontiguousarray(arr[:, k]) for k in range(3))
    for x in (s, s1, s2):
        x.setflags(write=False)
    return s1, s2, s


@lru_cache(maxsize=None)
def shift_targets(order):
    """For each slot s1, the product slots of s1 with the prefix of slots
    s2 whose degree fits in ``order - deg(s1)``."""
    exps = exponents(order)
    out = []
    for a1, b1 in exps:
        rest = order - a1 - b1
        out.append(np.array([slot(a1 + a2, b1 + b2) for a2, b2 in exponents(rest)], dtype=np.intp))
    return tuple(out)


@lru_cache(maxsize=None)
def derivative_map(order, da, db):
    """Source slots and factorial weights for the jet of d^da_x d^db_y f.

    Slot (a, b) of the derivative's order-``order`` jet equals
    ``weight * f[(a + da, b + db)]`` where f is the order-(order+da+db) jet.
    """
    src = []
    w = []
    for a, b in exponents(order):
        src.append(slot(a + da, b + db))
        w.append(_falling(a + da, da) * _falling(b + db, db))
    return np.array(src, dtype=np.intp), np.array(w, dtype=float)


def _falling(n, k):
    r = 1
    for i in range(k):
        r *= n - i
    return r
