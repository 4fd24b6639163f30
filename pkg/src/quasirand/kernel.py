"""Bounded real functions on ordered k-tuples of ground vertices.

A :class:`Kernel` is backed by a dense ``n**k`` table. The hypergraph views
(:meth:`Kernel.indicator`, :meth:`Kernel.centered`) evaluate points directly from
the edge set and only materialize the table when an engine asks for it.
"""

from __future__ import annotations

import itertools
from typing import Optional

import numpy as np

from .errors import AritiesDisagree
from .hypergraph import Hypergraph


def _table_is_symmetric(table: np.ndarray) -> bool:
    k = table.ndim
    return all(
        np.array_equal(table, np.transpose(table, perm))
        for perm in itertools.permutations(range(k))
        if perm != tuple(range(k))
    )


class Kernel:
    """A real-valued function on ``{0..n-1}^k``.

    ``symmetric`` is computed from the table when not given. ``bound`` is any
    real ``B`` with ``|f| <= B``; it defaults to the table's max absolute value.
    """

    def __init__(self, table, symmetric: Optional[bool] = None, bound: Optional[float] = None):
        table = np.ascontiguousarray(table, dtype=np.float64)
        if table.ndim < 1 or len(set(table.shape)) != 1:
            raise AritiesDisagree(f"kernel table must be a cube, got shape {table.shape}")
        self._table = table
        self.n = table.shape[0]
        self.k = table.ndim
        self.symmetric = _table_is_symmetric(table) if symmetric is None else bool(symmetric)
        self.bound = float(np.max(np.abs(table))) if bound is None else float(bound)

    @property
    def table(self) -> np.ndarray:
        return self._table

    def __call__(self, *x: int) -> float:
        return float(self.table[x])

    # constructors

    @classmethod
    def constant(cls, n: int, k: int, c: float) -> "Kernel":
        return cls(np.full((n,) * k, float(c)), symmetric=True, bound=abs(c))

    @classmethod
    def indicator(cls, G: Hypergraph) -> "HypergraphKernel":
        return HypergraphKernel(G, 0.0)

    @classmethod
    def centered(cls, G: Hypergraph, p: Optional[float] = None) -> "HypergraphKernel":
        """``chi_E - p``; ``p`` defaults to the observed density of ``G``."""
        return HypergraphKernel(G, G.density() if p is None else float(p))

    @classmethod
    def random(cls, n: int, k: int, rng: np.random.Generator, symmetric: bool = False,
               low: float = -1.0, high: float = 1.0) -> "Kernel":
        table = rng.uniform(low, high, size=(n,) * k)
        if symmetric:
            perms = list(itertools.permutations(range(k)))
            table = sum(np.transpose(table, p) for p in perms) / len(perms)
        return cls(table, symmetric=symmetric or None)

    # arithmetic, used by the seminorm properties

    def _combine(self, other, op):
        if isinstance(other, Kernel):
            if other.n != self.n or other.k != self.k:
                raise AritiesDisagree("kernels have different shapes")
            return Kernel(op(self.table, other.table), symmetric=self.symmetric and other.symmetric or None)
        return Kernel(op(self.table, float(other)), symmetric=self.symmetric or None)

    def __add__(self, other):
        return self._combine(other, np.add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, np.subtract)

    def __mul__(self, other):
        return self._combine(other, np.multiply)

    __rmul__ = __mul__

    def __neg__(self):
        return Kernel(-self.table, symmetric=self.symmetric, bound=self.bound)

    def mean(self) -> float:
        return float(np.mean(self.table))

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, k={self.k}, symmetric={self.symmetric})"


class HypergraphKernel(Kernel):
    """``chi_E - offset`` for a hypergraph ``G``.

    Tuples with a repeated vertex are never edges, so they evaluate to ``-offset``.
    """

    def __init__(self, G: Hypergraph, offset: float = 0.0):
        self.G = G
        self.offset = float(offset)
        self.n = G.n
        self.k = G.k
        self.symmetric = True
        self.bound = max(abs(1.0 - self.offset), abs(self.offset))
        self._table = None

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            t = np.full((self.n,) * self.k, -self.offset)
            if self.G.edges:
                e = np.asarray(self.G.edges, dtype=np.intp)
                for perm in itertools.permutations(range(self.k)):
                    t[tuple(e[:, list(perm)].T)] = 1.0 - self.offset
            self._table = t
        return self._table

    def __call__(self, *x: int) -> float:
        if len(set(x)) == len(x) and self.G.has_edge(x):
            return 1.0 - self.offset
        return -self.offset
