# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: int64 cyclotomic mul-mod and distinct-tuple counting.

Callers are responsible for keeping int64 arithmetic in range; see
``scalar.CyclotomicField`` for the bound check that guards ``poly_mulmod``.
"""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()

BACKEND = "cython"

ctypedef long long i64


cdef list _reduce(i64[::1] prod, const i64[:, ::1] red, Py_ssize_t phi):
    cdef Py_ssize_t k, j, m = prod.shape[0]
    cdef i64 c
    for k in range(m - 1, phi - 1, -1):
        c = prod[k]
        if c != 0:
            for j in range(phi):
                prod[j] += c * red[k - phi, j]
    return [prod[j] for j in range(phi)]


def poly_mulmod(a, b, red):
    cdef const i64[::1] av = np.ascontiguousarray(a, dtype=np.int64)
    cdef const i64[::1] bv = np.ascontiguousarray(b, dtype=np.int64)
    cdef const i64[:, ::1] rv = red
    cdef Py_ssize_t phi = av.shape[0], i, j
    cdef i64 ai
    cdef i64[::1] prod = np.zeros(2 * phi - 1, dtype=np.int64)
    for i in range(phi):
        ai = av[i]
        if ai != 0:
            for j in range(phi):
                prod[i + j] += ai * bv[j]
    return _reduce(prod, rv, phi)


def poly_dot_mod(rows_a, rows_b, red):
    cdef const i64[:, ::1] A = np.ascontiguousarray(rows_a, dtype=np.int64)
    cdef const i64[:, ::1] B = np.ascontiguousarray(rows_b, dtype=np.int64)
    cdef const i64[:, ::1] rv = red
    cdef Py_ssize_t m = A.shape[0], phi = A.shape[1], r, i, j
    cdef i64 ai
    cdef i64[::1] prod = np.zeros(2 * phi - 1, dtype=np.int64)
    for r in range(m):
        for i in range(phi):
            ai = A[r, i]
            if ai != 0:
                for j in range(phi):
                    prod[i + j] += ai * B[r, j]
    return _reduce(prod, rv, phi)


def count_histogram(add, mul):
    cdef const int[:, ::1] T = np.ascontiguousarray(add, dtype=np.intc)
    cdef const int[:, ::1] W = np.ascontiguousarray(mul, dtype=np.intc)
    cdef Py_ssize_t n = T.shape[0], k = W.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.zeros(n, dtype=np.int64)
    cdef i64[::1] counts = out
    cdef unsigned char* used = <unsigned char*> malloc(n)
    cdef int* choice = <int*> malloc(k * sizeof(int))
    cdef int* partial = <int*> malloc((k + 1) * sizeof(int))
    cdef Py_ssize_t pos, a, s
    try:
        for a in range(n):
            used[a] = 0
        if k == 1:
            for a in range(n):
                counts[T[0, W[0, a]]] += 1
            return out
        pos = 0
        partial[0] = 0
        choice[0] = -1
        while pos >= 0:
            if choice[pos] >= 0:
                used[choice[pos]] = 0
            a = choice[pos] + 1
            while a < n and used[a]:
                a += 1
            if a >= n:
                choice[pos] = -1
                pos -= 1
                continue
            choice[pos] = a
            used[a] = 1
            partial[pos + 1] = T[partial[pos], W[pos, a]]
            if pos + 1 == k - 1:
                s = partial[pos + 1]
                for a in range(n):
                    if not used[a]:
                        counts[T[s, W[k - 1, a]]] += 1
            else:
                pos += 1
                choice[pos] = -1
        return out
    finally:
        free(used)
        free(choice)
        free(partial)


def count_target(add, mul, sub, pre_start, pre_list, int c):
    cdef const int[:, ::1] T = np.ascontiguousarray(add, dtype=np.intc)
    cdef const int[:, ::1] W = np.ascontiguousarray(mul, dtype=np.intc)
    cdef const int[:, ::1] S = np.ascontiguousarray(sub, dtype=np.intc)
    cdef const int[::1] ps = np.ascontiguousarray(pre_start, dtype=np.intc)
    cdef const int[::1] pl = np.ascontiguousarray(pre_list, dtype=np.intc)
    cdef Py_ssize_t n = T.shape[0], k = W.shape[0]
    cdef unsigned char* used = <unsigned char*> malloc(n)
    cdef int* choice = <int*> malloc(k * sizeof(int))
    cdef int* partial = <int*> malloc((k + 1) * sizeof(int))
    cdef Py_ssize_t pos, a, v, idx
    cdef i64 total = 0
    try:
        for a in range(n):
            used[a] = 0
        if k == 1:
            v = S[c, 0]
            return ps[v + 1] - ps[v]
        pos = 0
        partial[0] = 0
        choice[0] = -1
        while pos >= 0:
            if choice[pos] >= 0:
                used[choice[pos]] = 0
            a = choice[pos] + 1
            while a < n and used[a]:
                a += 1
            if a >= n:
                choice[pos] = -1
                pos -= 1
                continue
            choice[pos] = a
            used[a] = 1
            partial[pos + 1] = T[partial[pos], W[pos, a]]
            if pos + 1 == k - 1:
                v = S[c, partial[pos + 1]]
                for idx in range(ps[v], ps[v + 1]):
                    if not used[pl[idx]]:
                        total += 1
            else:
                pos += 1
                choice[pos] = -1
        return total
    finally:
        free(used)
        free(choice)
        free(partial)
