# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled jet kernels; same contracts as ``_kernels_py``."""

import numpy as np
cimport numpy as cnp

from ._tables import n_slots, pair_table

cnp.import_array()


cdef inline void _acc_prod(double complex[:, :, :, ::1] o, int s,
                           const double complex[:, :, :, ::1] a, int s1,
                           const double complex[:, :, :, ::1] b, int s2,
                           Py_ssize_t P, Py_ssize_t na, Py_ssize_t nb) noexcept nogil:
    cdef Py_ssize_t p, i, j, l, n
    cdef double complex av, bv, acc
    if na == nb:
        n = na
        for p in range(P):
            for i in range(n):
                for j in range(n):
                    acc = 0
                    for l in range(n):
                        acc = acc + a[s1, p, i, l] * b[s2, p, l, j]
                    o[s, p, i, j] = o[s, p, i, j] + acc
    elif na == 1:
        for p in range(P):
            av = a[s1, p, 0, 0]
            for i in range(nb):
                for j in range(nb):
                    o[s, p, i, j] = o[s, p, i, j] + av * b[s2, p, i, j]
    else:
        for p in range(P):
            bv = b[s2, p, 0, 0]
            for i in range(na):
                for j in range(na):
                    o[s, p, i, j] = o[s, p, i, j] + a[s1, p, i, j] * bv


def _live(const double complex[:, :, :, ::1] x, Py_ssize_t S):
    flags = np.zeros(S, dtype=np.uint8)
    cdef unsigned char[::1] f = flags
    cdef Py_ssize_t s, p, i, j
    with nogil:
        for s in range(S):
            for p in range(x.shape[1]):
                for i in range(x.shape[2]):
                    for j in range(x.shape[3]):
                        if x[s, p, i, j] != 0:
                            f[s] = 1
                            break
                    if f[s]:
                        break
                if f[s]:
                    break
    return flags


def jet_mul(const double complex[:, :, :, ::1] a, const double complex[:, :, :, ::1] b, int order):
    cdef Py_ssize_t S = n_slots(order)
    cdef Py_ssize_t P = a.shape[1]
    cdef Py_ssize_t na = a.shape[2], nb = b.shape[2]
    cdef Py_ssize_t n = max(na, nb)
    out = np.zeros((S, P, n, n), dtype=np.complex128)
    cdef double complex[:, :, :, ::1] o = out
    s1_arr, s2_arr, s_arr = pair_table(order)
    cdef const int[::1] t1 = s1_arr
    cdef const int[::1] t2 = s2_arr
    cdef const int[::1] ts = s_arr
    cdef const unsigned char[::1] la = _live(a, S)
    cdef const unsigned char[::1] lb = _live(b, S)
    cdef Py_ssize_t k
    with nogil:
        for k in range(t1.shape[0]):
            if la[t1[k]] and lb[t2[k]]:
                _acc_prod(o, ts[k], a, t1[k], b, t2[k], P, na, nb)
    return out


def jet_inv(const double complex[:, :, :, ::1] a, int order, inv0):
    cdef Py_ssize_t S = n_slots(order)
    cdef Py_ssize_t P = a.shape[1]
    cdef Py_ssize_t n = a.shape[2]
    g = np.zeros((S, P, n, n), dtype=np.complex128)
    g[0] = inv0
    cdef double complex[:, :, :, ::1] gv = g
    acc_arr = np.zeros((1, P, n, n), dtype=np.complex128)
    cdef double complex[:, :, :, ::1] acc = acc_arr
    s1_arr, s2_arr, s_arr = pair_table(order)
    cdef const int[::1] t1 = s1_arr
    cdef const int[::1] t2 = s2_arr
    cdef const int[::1] ts = s_arr
    cdef const unsigned char[::1] la = _live(a, S)
    cdef Py_ssize_t k = 0, npairs = t1.shape[0], s, p, i, j, l
    cdef double complex v
    with nogil:
        # pairs are sorted by output slot; slot 0 only has the (0, 0) pair
        while k < npairs and ts[k] == 0:
            k = k + 1
        for s in range(1, S):
            acc[0, :, :, :] = 0
            while k < npairs and ts[k] == s:
                if t1[k] != 0 and la[t1[k]]:
                    _acc_prod(acc, 0, a, t1[k], gv, t2[k], P, n, n)
                k = k + 1
            for p in range(P):
                for i in range(n):
                    for j in range(n):
                        v = 0
                        for l in range(n):
                            v = v + gv[0, p, i, l] * acc[0, p, l, j]
                        gv[s, p, i, j] = -v
    return g
