"""Finite quasirandomness statistics for a single hypergraph.

Witness statistics compare the edge density inside a symmetric witness set
``K`` with the overall density ``p_hat``. Count statistics compare
``t_{M_k[I]}(chi_E)`` with ``p_hat ** 2**|I|`` and report the centered density
``t_{M_k[I]}(chi_E - p_hat)``, which is a mean of squares and so never negative.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass
from typing import Iterable, Mapping, Optional

import numpy as np

from .density import MC_BLOCK, SCHEMA_VERSION, block_rng, density
from .errors import (
    ArityMismatch,
    BadLevel,
    BadParams,
    EdgeArityMismatch,
    EmptyWitnessSet,
    RepeatedVertices,
    VertexOutOfRange,
)
from .families import SubsetFreeCollection, family_choose, family_deviation
from .hypergraph import Hypergraph
from .kernel import Kernel
from .mk import build_mk

DEFAULT_WITNESS_BUDGET = 200_000
DEFAULT_WITNESS_SAMPLES = 100_000


@dataclass(frozen=True)
class WitnessFamily:
    """One set ``H_I`` of unordered ``|I|``-subsets of ``{0..n-1}`` per member ``I``.

    ``sets[i]`` belongs to ``family.sets[i]``. Subsets are stored sorted.
    """

    n: int
    family: SubsetFreeCollection
    sets: tuple[frozenset, ...]

    def __post_init__(self):
        if len(self.sets) != len(self.family.sets):
            raise ArityMismatch(
                f"{len(self.sets)} witness sets for {len(self.family.sets)} members"
            )
        clean = []
        for member, H in zip(self.family.sets, self.sets):
            out = set()
            for raw in H:
                s = tuple(sorted(raw))
                if len(s) != len(member) or len(set(s)) != len(s):
                    raise EdgeArityMismatch(
                        f"witness {tuple(raw)} for member {set(member)} needs {len(member)} distinct vertices"
                    )
                if s and (s[0] < 0 or s[-1] >= self.n):
                    raise VertexOutOfRange(f"witness {tuple(raw)} leaves [0, {self.n})")
                out.add(s)
            clean.append(frozenset(out))
        object.__setattr__(self, "sets", tuple(clean))

    @property
    def k(self) -> int:
        return self.family.k

    @classmethod
    def full(cls, n: int, family: SubsetFreeCollection) -> "WitnessFamily":
        return cls(n, family, tuple(
            frozenset(itertools.combinations(range(n), len(m))) for m in family.sets
        ))

    @classmethod
    def from_mapping(cls, n: int, family: SubsetFreeCollection,
                     sets: Mapping[int, Iterable]) -> "WitnessFamily":
        return cls(n, family, tuple(frozenset(sets.get(i, ())) for i in range(len(family.sets))))


@dataclass
class DiscReport:
    mode: str
    p_hat: float
    statistic: float
    expected: float
    deviation: float
    witness_size: Optional[int] = None
    centered: Optional[float] = None
    method: Optional[str] = None
    samples: Optional[int] = None
    stderr: Optional[float] = None
    max_factor_arity: Optional[int] = None
    seed: Optional[int] = None

    def to_dict(self) -> dict:
        d = {"schema_version": SCHEMA_VERSION}
        d.update(asdict(self))
        if d["stderr"] is not None and not math.isfinite(d["stderr"]):
            d["stderr"] = None
        return d


def kkk_member(x, W: WitnessFamily) -> bool:
    """Whether some relabeling of the positions of ``x`` lands every member in its witness set."""
    x = tuple(int(v) for v in x)
    if len(x) != W.k:
        raise ArityMismatch(f"tuple of length {len(x)} for arity {W.k}")
    if len(set(x)) != len(x):
        raise RepeatedVertices(f"{x} repeats a vertex")
    return _member(x, W.family.sets, W.sets)


def _member(x, members, sets) -> bool:
    for perm in itertools.permutations(x):
        if all(tuple(sorted(perm[i] for i in I)) in H for I, H in zip(members, sets)):
            return True
    return False


def _ratio_report(mode, G, in_k, hits, total, exhaustive, samples=None, seed=None, p=None):
    p_hat = G.density()
    target = p_hat if p is None else float(p)
    if in_k == 0:
        raise EmptyWitnessSet("no k-subset lies in the witness set")
    r = hits / in_k
    if exhaustive:
        return DiscReport(mode, p_hat, r, target, r - target, witness_size=in_k,
                          method="exhaustive")
    stderr = math.sqrt(r * (1 - r) / (in_k - 1)) if in_k > 1 else math.inf
    # scaled estimate of |K| from the sampled hit rate
    size = int(round(total * in_k / samples))
    return DiscReport(mode, p_hat, r, target, r - target, witness_size=size,
                      method="sampled", samples=samples, stderr=stderr, seed=seed)


def _sample_subsets(n, k, samples, seed):
    """``samples`` uniform k-subsets (sorted tuples), drawn with replacement."""
    out = []
    block = 0
    while len(out) < samples:
        rng = block_rng(seed, block)
        want = min(samples - len(out), MC_BLOCK)
        keys = rng.random((want, n))
        rows = np.sort(np.argpartition(keys, k - 1, axis=1)[:, :k], axis=1)
        out.extend(tuple(int(v) for v in r) for r in rows)
        block += 1
    return out


def _scan(G, k, test, budget, samples, seed):
    total = math.comb(G.n, k)
    if total <= budget:
        pool, exhaustive = itertools.combinations(range(G.n), k), True
    else:
        if seed is None:
            raise BadParams("witness set too large to enumerate; sampling needs a seed")
        pool, exhaustive = _sample_subsets(G.n, k, samples, seed), False
    in_k = hits = 0
    for e in pool:
        if test(e):
            in_k += 1
            hits += G.has_edge(e)
    return in_k, hits, total, exhaustive


def disc_witness(G: Hypergraph, W: WitnessFamily, budget: int = DEFAULT_WITNESS_BUDGET,
                 samples: int = DEFAULT_WITNESS_SAMPLES, seed: Optional[int] = None,
                 p: Optional[float] = None) -> DiscReport:
    """Edge density inside ``K_k({H_I})`` against ``p`` (default ``p_hat``).

    All ``C(n, k)`` subsets are scanned when that is at most ``budget``;
    otherwise ``samples`` uniform subsets are drawn and ``witness_size`` is the
    scaled estimate of ``|K|``.
    """
    if G.k != W.k or G.n != W.n:
        raise ArityMismatch(f"graph is ({G.n}, {G.k}) but witnesses are ({W.n}, {W.k})")
    members, sets = W.family.sets, W.sets
    in_k, hits, total, ex = _scan(G, G.k, lambda e: _member(e, members, sets), budget, samples, seed)
    return _ratio_report("disc", G, in_k, hits, total, ex, samples, seed, p)


def cliquedisc_witness(G: Hypergraph, B: Iterable, l: int, budget: int = DEFAULT_WITNESS_BUDGET,
                       samples: int = DEFAULT_WITNESS_SAMPLES,
                       seed: Optional[int] = None, p: Optional[float] = None) -> DiscReport:
    """Edge density among the k-subsets all of whose l-subsets lie in ``B``."""
    if not 1 <= l < G.k:
        raise BadLevel(f"need 1 <= l < k, got l={l}, k={G.k}")
    Bs = set()
    for raw in B:
        s = tuple(sorted(int(v) for v in raw))
        if len(s) != l or len(set(s)) != l:
            raise EdgeArityMismatch(f"{tuple(raw)} is not an {l}-subset")
        if s[0] < 0 or s[-1] >= G.n:
            raise VertexOutOfRange(f"{tuple(raw)} leaves [0, {G.n})")
        Bs.add(s)

    def test(e):
        return all(c in Bs for c in itertools.combinations(e, l))

    in_k, hits, total, ex = _scan(G, G.k, test, budget, samples, seed)
    return _ratio_report("cliquedisc", G, in_k, hits, total, ex, samples, seed, p)


def _count_report(mode, G, family, method, options, p=None):
    p_hat = G.density()
    target = p_hat if p is None else float(p)
    M = build_mk(G.k, family)
    plain = density(M, Kernel.indicator(G), method, **options)
    cent = density(M, Kernel.centered(G, target), method, **options)
    expected = target ** (2 ** len(family))
    return DiscReport(
        mode, p_hat, plain.value, expected, plain.value - expected,
        centered=cent.value, method=plain.method, samples=plain.samples,
        stderr=plain.stderr, max_factor_arity=plain.max_factor_arity, seed=plain.seed,
    )


def deviation_stat(G: Hypergraph, l: int, method: str = "elimination", p: Optional[float] = None,
                   **options) -> DiscReport:
    """``t(chi_E - p_hat)`` on the squashed octahedron for level ``l``.

    The statistic is the centered density; ``expected`` is 0.
    """
    if l == G.k:
        raise BadLevel(
            f"l = k = {l} gives no (k-1)-subset containing [k], so the pattern is undefined"
        )
    if not 2 <= l < G.k:
        raise BadLevel(f"need 2 <= l < k, got l={l}, k={G.k}")
    rep = _count_report("deviation", G, family_deviation(G.k, l), method, options, p)
    rep.statistic, rep.expected, rep.deviation = rep.centered, 0.0, rep.centered
    return rep


def mk_test(G: Hypergraph, family: SubsetFreeCollection, method: str = "elimination",
            p: Optional[float] = None, **options) -> DiscReport:
    """``t_{M_k[I]}(chi_E)`` against ``p_hat ** 2**|I|``, plus the centered density."""
    if family.k != G.k:
        raise ArityMismatch(f"family lives on [{family.k}] but the graph is {G.k}-uniform")
    return _count_report("mk", G, family, method, options, p)


def clique_witness_family(n: int, k: int, B: Iterable, l: int) -> WitnessFamily:
    """The witness family equivalent to a clique test: ``H_I = B`` for every l-subset ``I``."""
    fam = family_choose(k, l)
    Bs = frozenset(tuple(sorted(s)) for s in B)
    return WitnessFamily(n, fam, tuple(Bs for _ in fam.sets))
