"""Hypergraph generators: iid random, induced samples, and the separation construction."""

from __future__ import annotations

import itertools
from math import comb
from typing import Optional

import numpy as np

from .errors import BadParams, BadSize
from .families import SubsetFreeCollection
from .hypergraph import Hypergraph


def _rng(seed) -> np.random.Generator:
    if seed is None or int(seed) < 0:
        raise BadParams("an explicit non-negative seed is required")
    return np.random.default_rng(int(seed))


def gen_random(n: int, k: int, p: float, seed: int) -> Hypergraph:
    """Each k-subset of ``{0..n-1}`` independently with probability ``p``.

    One uniform draw per k-subset, in lexicographic order.
    """
    if not 0.0 <= p <= 1.0 or k < 1 or n < k:
        raise BadParams(f"need 0 <= p <= 1 and n >= k >= 1, got n={n}, k={k}, p={p}")
    keep = _rng(seed).random(comb(n, k)) < p
    combos = itertools.combinations(range(n), k)
    return Hypergraph(n, k, tuple(itertools.compress(combos, keep)))


class SeparationWeights:
    """Lazily drawn iid Uniform[0,1) weights keyed by (member index, sorted sub-tuple).

    A weight is a pure function of ``(seed, member index, sub-tuple)``: its bits
    come from ``SeedSequence([seed, index, *sub])``, so the order in which keys are
    first touched never matters.
    """

    def __init__(self, family: SubsetFreeCollection, seed: int):
        _rng(seed)
        self.family = family
        self.seed = int(seed)
        self._cache: dict[tuple[int, tuple[int, ...]], float] = {}

    def __call__(self, index: int, sub: tuple[int, ...]) -> float:
        key = (index, sub)
        w = self._cache.get(key)
        if w is None:
            words = np.random.SeedSequence([self.seed, index, *sub]).generate_state(2, np.uint64)
            w = float(int(words[0]) >> 11) * 2.0**-53
            w = self._cache.setdefault(key, w)
        return w

    def edge_score(self, e: tuple[int, ...]) -> float:
        """``sum_I w_I(e restricted to I) mod 1`` for a sorted tuple ``e``."""
        total = 0.0
        for i, member in enumerate(self.family.sets):
            total += self(i, tuple(e[j] for j in member))
        return total % 1.0


def gen_separation(n: int, k: int, family: SubsetFreeCollection, p: float, seed: int) -> Hypergraph:
    """The sorted k-subsets whose summed member weights fall below ``p`` modulo 1.

    Vertices are ordered by their ids; position ``j`` of an edge is its
    ``j``-th smallest vertex.
    """
    if not 0.0 < p < 1.0 or n < k or family.k != k:
        raise BadParams(f"need 0 < p < 1, n >= k and a family on [{k}]")
    w = SeparationWeights(family, seed)
    edges = [e for e in itertools.combinations(range(n), k) if w.edge_score(e) < p]
    return Hypergraph(n, k, tuple(edges))


def sample_induced(G: Hypergraph, m: int, seed: int) -> Hypergraph:
    """Induced subhypergraph on ``m`` distinct uniformly chosen vertices.

    The chosen vertices keep their relative order and are relabeled ``0..m-1``.
    """
    if not 0 <= m <= G.n:
        raise BadSize(f"cannot sample {m} of {G.n} vertices")
    chosen = np.sort(_rng(seed).choice(G.n, size=m, replace=False))
    relabel = {int(v): i for i, v in enumerate(chosen)}
    edges = [
        tuple(relabel[v] for v in e)
        for e in G.edges
        if all(v in relabel for v in e)
    ]
    return Hypergraph(m, G.k, tuple(edges))


def random_witness_sets(n: int, family: SubsetFreeCollection, density: float,
                        seed: int) -> dict[int, set[tuple[int, ...]]]:
    """Random ``H_I``: each ``|I|``-subset kept independently with probability ``density``."""
    rng = _rng(seed)
    out = {}
    for i, member in enumerate(family.sets):
        subs = list(itertools.combinations(range(n), len(member)))
        keep = rng.random(len(subs)) < density
        out[i] = set(itertools.compress(subs, keep))
    return out
