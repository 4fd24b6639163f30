"""Pure numpy versions of the compiled kernels in ``_core.pyx``.

Same signatures and semantics; used when the extension is not built or when
``QUASIRAND_BACKEND=python`` is set.
"""

import math

import numpy as np

_BLOCK = 1 << 18


def _strides(n, k):
    return n ** np.arange(k - 1, -1, -1, dtype=np.intp)


def _products(tables, edges, edge_table, stride, cols):
    prod = np.ones(cols.shape[0])
    for e, t in zip(edges, edge_table):
        flat = cols[:, e] @ stride
        prod *= tables[t][flat]
    return prod


def naive_sum(tables, edges, edge_table, n, nverts, lo, hi):
    """Sum of edge products over all assignments with ``x[0]`` in ``[lo, hi)``."""
    if lo >= hi:
        return 0.0
    tables = np.asarray(tables)
    edges = np.asarray(edges, dtype=np.intp)
    k = edges.shape[1]
    stride = _strides(n, k)
    rest = n ** (nverts - 1)
    total = (hi - lo) * rest
    partial = []
    for start in range(0, total, _BLOCK):
        idx = np.arange(start, min(start + _BLOCK, total), dtype=np.intp)
        cols = np.empty((idx.size, nverts), dtype=np.intp)
        rem = idx
        for v in range(nverts - 1, 0, -1):
            rem, cols[:, v] = np.divmod(rem, n)
        cols[:, 0] = rem + lo
        partial.append(float(np.sum(_products(tables, edges, edge_table, stride, cols))))
    return math.fsum(partial)


def edge_products(tables, edges, edge_table, n, assign):
    """Edge product for every row of ``assign`` (one row per sampled map)."""
    tables = np.asarray(tables)
    edges = np.asarray(edges, dtype=np.intp)
    return _products(tables, edges, edge_table, _strides(n, edges.shape[1]), np.asarray(assign))
