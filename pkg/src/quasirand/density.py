"""Weighted homomorphism densities.

``t_H(f)`` is the average, over *all* maps of the pattern's vertices into
``{0..n-1}`` (injective or not), of the product of ``f`` over the pattern's
edges. Partite patterns feed each edge to ``f`` in part order; plain
hypergraph patterns use the sorted vertex order and therefore require a
symmetric kernel.

Three engines compute it:

* ``naive``: exhaustive enumeration (compiled loop), exact, ``n**|V|`` work.
* ``elimination``: sum-product variable elimination over the pattern vertices
  with a min-fill ordering; exact, cost governed by the largest factor.
* ``monte-carlo``: iid uniform maps. The stream is PCG64 seeded by
  ``SeedSequence(seed, spawn_key=(block,))`` for consecutive blocks of
  65536 samples, so the estimate depends only on ``(seed, samples)``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from . import _backend
from .errors import (
    AritiesDisagree,
    AsymmetricKernelOnUnorderedPattern,
    BudgetExceeded,
    FactorBudgetExceeded,
    MissingSigma,
    QuasirandError,
)
from .families import SubsetFreeCollection
from .hypergraph import Hypergraph, PartiteHypergraph
from .kernel import Kernel
from .mk import MkHypergraph, build_mk

SCHEMA_VERSION = 1
DEFAULT_CELL_BUDGET = 5 * 10**7
DEFAULT_FACTOR_CELLS = 1 << 25
MC_BLOCK = 1 << 16

Pattern = Union[Hypergraph, PartiteHypergraph, MkHypergraph]
METHODS = {
    "naive": "naive",
    "elim": "elimination",
    "elimination": "elimination",
    "mc": "monte-carlo",
    "monte-carlo": "monte-carlo",
}


@dataclass
class DensityReport:
    value: float
    method: str
    samples: Optional[int] = None
    stderr: Optional[float] = None
    max_factor_arity: Optional[int] = None
    seed: Optional[int] = None

    def to_dict(self) -> dict:
        d = {"schema_version": SCHEMA_VERSION}
        d.update(asdict(self))
        return d


@dataclass
class _Prepared:
    n: int
    k: int
    nverts: int
    edges: np.ndarray  # (m, k) pattern vertex ids, evaluation order
    kernels: list  # one Kernel per edge


def _prepare(H: Pattern, f: Union[Kernel, Sequence[Kernel]]) -> _Prepared:
    if isinstance(H, MkHypergraph):
        H = H.underlying
    if isinstance(H, PartiteHypergraph):
        nverts, edges, ordered = H.num_vertices, list(H.edges), True
    elif isinstance(H, Hypergraph):
        nverts, edges, ordered = H.n, list(H.edges), False
    else:
        raise TypeError(f"unsupported pattern type {type(H).__name__}")

    kernels = [f] * len(edges) if isinstance(f, Kernel) else list(f)
    if len(kernels) != len(edges):
        raise AritiesDisagree(f"{len(kernels)} kernels for {len(edges)} edges")
    if not kernels:
        if not isinstance(f, Kernel):
            raise AritiesDisagree("an edgeless pattern needs a kernel to fix the ground set")
        kernels_for_shape = [f]
    else:
        kernels_for_shape = kernels
    n = kernels_for_shape[0].n
    for g in kernels_for_shape:
        if g.k != H.k:
            raise AritiesDisagree(f"pattern is {H.k}-uniform but kernel has arity {g.k}")
        if g.n != n:
            raise AritiesDisagree("kernels disagree on the ground set size")
        if not ordered and not g.symmetric:
            raise AsymmetricKernelOnUnorderedPattern(
                "a non-partite pattern only admits symmetric kernels"
            )
    arr = np.asarray(edges, dtype=np.intp).reshape(len(edges), H.k)
    return _Prepared(n, H.k, nverts, arr, kernels)


def _stack(prep: _Prepared):
    uniq, index = [], []
    for g in prep.kernels:
        for i, u in enumerate(uniq):
            if u is g:
                index.append(i)
                break
        else:
            index.append(len(uniq))
            uniq.append(g)
    if uniq:
        tables = np.ascontiguousarray(np.stack([g.table.reshape(-1) for g in uniq]))
    else:
        tables = np.zeros((1, 1))
    return tables, np.asarray(index, dtype=np.intp)


# naive


def t_naive(H: Pattern, f, budget_cells: int = DEFAULT_CELL_BUDGET,
            threads: Optional[int] = None) -> DensityReport:
    prep = _prepare(H, f)
    if prep.nverts == 0 or len(prep.edges) == 0:
        return DensityReport(1.0, "naive")
    cells = prep.n ** prep.nverts
    if cells > budget_cells:
        raise BudgetExceeded(
            f"naive enumeration needs {prep.n}^{prep.nverts} = {cells} assignments "
            f"(budget {budget_cells})",
            required=cells,
        )
    tables, index = _stack(prep)
    workers = min(threads or _backend.threads(), prep.n)
    # fixed split of x[0]'s range, summed in order: independent of worker count
    bounds = np.linspace(0, prep.n, prep.n + 1, dtype=int)

    def run(i):
        return _backend.naive_sum(tables, prep.edges, index, prep.n, prep.nverts,
                                  int(bounds[i]), int(bounds[i + 1]))

    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            parts = list(ex.map(run, range(prep.n)))
    else:
        parts = [run(i) for i in range(prep.n)]
    return DensityReport(math.fsum(parts) / cells, "naive")


# variable elimination


def elimination_order(nverts: int, scopes: Sequence[Sequence[int]]) -> tuple[list[int], int]:
    """Min-fill order (ties: min degree, then lowest id) and the largest factor arity.

    The arity counts input factors as well as every factor created by an
    elimination step. Vertices in no edge are skipped: each contributes a
    factor of exactly 1.
    """
    adj: dict[int, set[int]] = {}
    for s in scopes:
        for v in s:
            adj.setdefault(v, set()).update(u for u in s if u != v)
    order = []
    widest = max((len(s) for s in scopes), default=0)
    live = set(adj)
    while live:
        def cost(v):
            nb = adj[v]
            fill = sum(1 for a in nb for b in nb if a < b and b not in adj[a])
            return (fill, len(nb), v)

        v = min(live, key=cost)
        nb = adj[v]
        widest = max(widest, len(nb))
        for a in nb:
            adj[a].update(nb - {a})
            adj[a].discard(v)
        live.discard(v)
        del adj[v]
        order.append(v)
    return order, widest


def _default_arity(n: int) -> int:
    if n <= 1:
        return 64
    return max(1, int(math.floor(math.log(DEFAULT_FACTOR_CELLS) / math.log(n) + 1e-9)))


_LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


def _sum_out(bucket, out, n, cell_cap):
    """Multiply the bucket's factors and sum away every variable not in ``out``."""
    union = sorted({u for s, _ in bucket for u in s})
    if out and n ** len(union) > cell_cap:
        # slice on one output variable so no pairwise intermediate exceeds the cap
        u = out[0]
        slices = []
        for x in range(n):
            sub = [((tuple(w for w in s if w != u)), np.take(t, x, axis=s.index(u)) if u in s else t)
                   for s, t in bucket]
            slices.append(_sum_out(sub, out[1:], n, cell_cap))
        return np.stack(slices)
    letter = {w: _LETTERS[i] for i, w in enumerate(union)}
    spec = ",".join("".join(letter[w] for w in s) for s, _ in bucket)
    spec += "->" + "".join(letter[w] for w in out)
    return np.asarray(np.einsum(spec, *[t for _, t in bucket], optimize=("greedy", cell_cap)))


def t_eliminate(H: Pattern, f, max_arity: Optional[int] = None) -> DensityReport:
    prep = _prepare(H, f)
    if len(prep.edges) == 0:
        return DensityReport(1.0, "elimination", max_factor_arity=0)
    n = prep.n
    scopes = [tuple(int(v) for v in e) for e in prep.edges]
    order, widest = elimination_order(prep.nverts, scopes)
    limit = _default_arity(n) if max_arity is None else max_arity
    if widest > limit:
        raise FactorBudgetExceeded(
            f"elimination needs a factor of arity {widest} (budget {limit}); "
            "use monte-carlo instead",
            required=widest,
        )
    factors = [(s, g.table) for s, g in zip(scopes, prep.kernels)]
    cell_cap = max(n ** limit, 1 << 20)
    for v in order:
        bucket = [fa for fa in factors if v in fa[0]]
        factors = [fa for fa in factors if v not in fa[0]]
        out = sorted({u for s, _ in bucket for u in s} - {v})
        factors.append((tuple(out), _sum_out(bucket, out, n, cell_cap) / n))
    value = 1.0
    for s, t in factors:
        value *= float(t)
    return DensityReport(value, "elimination", max_factor_arity=widest)


# Monte Carlo


def _block_stats(vals: np.ndarray):
    # shifted two-pass: constant integrands give zero variance exactly
    shift = vals[0]
    d = vals - shift
    dm = float(np.mean(d))
    return vals.size, shift + dm, float(np.sum((d - dm) ** 2))


def _merge(a, b):
    na, ma, m2a = a
    nb, mb, m2b = b
    n = na + nb
    delta = mb - ma
    return n, ma + delta * nb / n, m2a + m2b + delta * delta * na * nb / n


def block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(block,))))


def t_montecarlo(H: Pattern, f, samples: int, seed: int,
                 threads: Optional[int] = None) -> DensityReport:
    if samples < 1:
        raise QuasirandError("samples must be at least 1")
    if seed is None or seed < 0:
        raise QuasirandError("an explicit non-negative seed is required")
    prep = _prepare(H, f)
    if len(prep.edges) == 0:
        return DensityReport(1.0, "monte-carlo", samples=samples, stderr=0.0, seed=seed)
    tables, index = _stack(prep)
    nblocks = -(-samples // MC_BLOCK)

    def run(b):
        size = min(MC_BLOCK, samples - b * MC_BLOCK)
        assign = block_rng(seed, b).integers(0, prep.n, size=(size, prep.nverts), dtype=np.intp)
        return _block_stats(_backend.edge_products(tables, prep.edges, index, prep.n, assign))

    workers = min(threads or _backend.threads(), nblocks)
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            stats = list(ex.map(run, range(nblocks)))
    else:
        stats = [run(b) for b in range(nblocks)]
    total = stats[0]
    for s in stats[1:]:
        total = _merge(total, s)
    count, mean, m2 = total
    stderr = math.sqrt(m2 / (count - 1) / count) if count > 1 else math.inf
    return DensityReport(float(mean), "monte-carlo", samples=samples, stderr=float(stderr), seed=seed)


# dispatch and the M_k[I] functionals


def density(H: Pattern, f, method: str = "elimination", samples: int = 10**6,
            seed: Optional[int] = None, budget_cells: int = DEFAULT_CELL_BUDGET,
            max_arity: Optional[int] = None) -> DensityReport:
    """Run one engine by name (``naive``/``elim``/``mc`` or their long names)."""
    try:
        m = METHODS[method]
    except KeyError:
        raise QuasirandError(f"unknown method {method!r}") from None
    if m == "naive":
        return t_naive(H, f, budget_cells=budget_cells)
    if m == "elimination":
        return t_eliminate(H, f, max_arity=max_arity)
    return t_montecarlo(H, f, samples, seed)


def inner_product_mk(k: int, family: SubsetFreeCollection,
                     f_assignments: Mapping[tuple, Kernel], method: str = "elimination",
                     **options) -> DensityReport:
    """The average of ``prod_sigma f_sigma(x_{e_sigma})`` over maps of ``M_k[family]``.

    ``f_assignments`` maps each ``sigma`` (a 0/1 tuple over the canonical
    member order) to its kernel.
    """
    M = build_mk(k, family)
    kernels = []
    for sigma in M.edge_labels:
        g = f_assignments.get(tuple(sigma))
        if g is None:
            raise MissingSigma(f"no kernel given for sigma={sigma}")
        kernels.append(g)
    return density(M, kernels, method, **options)


def t_mk(k: int, family: SubsetFreeCollection, f: Kernel, method: str = "elimination",
         **options) -> DensityReport:
    return density(build_mk(k, family), f, method, **options)


def norm_mk(k: int, family: SubsetFreeCollection, f: Kernel, method: str = "elimination",
            **options) -> float:
    """``|t_{M_k[family]}(f)| ** (2 ** -|family|)``."""
    t = t_mk(k, family, f, method, **options).value
    return abs(t) ** (2.0 ** -len(family))
