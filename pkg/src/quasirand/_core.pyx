# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for the density engines.

Tables are flattened row-major: the entry for an ordered tuple
``(x_0, ..., x_{k-1})`` lives at ``sum(x_i * n**(k-1-i))``.
"""

import numpy as np


def naive_sum(const double[:, ::1] tables, const Py_ssize_t[:, ::1] edges,
              const Py_ssize_t[::1] edge_table, Py_ssize_t n, Py_ssize_t nverts,
              Py_ssize_t lo, Py_ssize_t hi):
    """Sum of edge products over all assignments with ``x[0]`` in ``[lo, hi)``."""
    cdef Py_ssize_t m = edges.shape[0]
    cdef Py_ssize_t k = edges.shape[1]
    cdef Py_ssize_t i, j, v, flat
    cdef double prod
    cdef long double total = 0.0
    cdef Py_ssize_t[::1] x = np.zeros(nverts, dtype=np.intp)
    cdef Py_ssize_t[::1] stride = np.empty(k, dtype=np.intp)

    if lo >= hi:
        return 0.0
    stride[k - 1] = 1
    for j in range(k - 2, -1, -1):
        stride[j] = stride[j + 1] * n
    x[0] = lo
    with nogil:
        while True:
            prod = 1.0
            for i in range(m):
                flat = 0
                for j in range(k):
                    flat = flat + x[edges[i, j]] * stride[j]
                prod = prod * tables[edge_table[i], flat]
                if prod == 0.0:
                    break
            total = total + prod
            # odometer, last vertex fastest
            v = nverts - 1
            while v > 0:
                x[v] += 1
                if x[v] < n:
                    break
                x[v] = 0
                v -= 1
            if v == 0:
                x[0] += 1
                if x[0] >= hi:
                    break
    return float(total)


def edge_products(const double[:, ::1] tables, const Py_ssize_t[:, ::1] edges,
                  const Py_ssize_t[::1] edge_table, Py_ssize_t n,
                  const Py_ssize_t[:, ::1] assign):
    """Edge product for every row of ``assign`` (one row per sampled map)."""
    cdef Py_ssize_t S = assign.shape[0]
    cdef Py_ssize_t m = edges.shape[0]
    cdef Py_ssize_t k = edges.shape[1]
    cdef Py_ssize_t s, i, j, flat
    cdef double prod
    out_arr = np.empty(S, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t[::1] stride = np.empty(k, dtype=np.intp)
    stride[k - 1] = 1
    for j in range(k - 2, -1, -1):
        stride[j] = stride[j + 1] * n
    with nogil:
        for s in range(S):
            prod = 1.0
            for i in range(m):
                flat = 0
                for j in range(k):
                    flat = flat + assign[s, edges[i, j]] * stride[j]
                prod = prod * tables[edge_table[i], flat]
                if prod == 0.0:
                    break
            out[s] = prod
    return out_arr
