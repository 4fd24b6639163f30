"""Finite hypergraphs, shadows and adaptedness certification."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import (
    ArityMismatch,
    BadPartition,
    DuplicateEdge,
    EdgeArityMismatch,
    EdgeNotPresent,
    VertexOutOfRange,
)
from .families import (
    Member,
    SubsetFreeCollection,
    _maximal,
    find_cover_bijection,
    leq_strong_sets,
)

Edge = tuple[int, ...]


@dataclass(frozen=True)
class Hypergraph:
    """A k-uniform hypergraph on vertices ``0..n-1``.

    ``edges`` is kept as a lexicographically sorted tuple of sorted tuples.
    """

    n: int
    k: int
    edges: tuple[Edge, ...] = ()
    _edge_set: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.k < 1:
            raise EdgeArityMismatch(f"uniformity must be positive, got {self.k}")
        if self.n < 0:
            raise VertexOutOfRange(f"vertex count must be non-negative, got {self.n}")
        seen = set()
        for raw in self.edges:
            e = tuple(sorted(raw))
            if len(e) != self.k or len(set(e)) != self.k:
                raise EdgeArityMismatch(f"edge {tuple(raw)} does not have {self.k} distinct vertices")
            if e[0] < 0 or e[-1] >= self.n:
                raise VertexOutOfRange(f"edge {tuple(raw)} has a vertex outside [0, {self.n})")
            if e in seen:
                raise DuplicateEdge(f"edge {e} listed twice")
            seen.add(e)
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        object.__setattr__(self, "_edge_set", frozenset(seen))

    @classmethod
    def complete(cls, n: int, k: int) -> "Hypergraph":
        return cls(n, k, tuple(itertools.combinations(range(n), k)))

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, e: Iterable[int]) -> bool:
        return tuple(sorted(e)) in self._edge_set

    def density(self) -> float:
        """|E| / C(n, k), the observed edge density."""
        total = _comb(self.n, self.k)
        return self.m / total if total else 0.0


def _comb(n, k):
    from math import comb

    return comb(n, k) if 0 <= k <= n else 0


@dataclass(frozen=True)
class PartiteHypergraph:
    """A k-partite k-uniform hypergraph.

    Vertex ids are ``0..N-1`` split into ``k`` disjoint ``parts``; position ``i``
    of every edge holds that edge's vertex from part ``i``.
    """

    k: int
    parts: tuple[tuple[int, ...], ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        parts = tuple(tuple(p) for p in self.parts)
        if len(parts) != self.k:
            raise BadPartition(f"expected {self.k} parts, got {len(parts)}")
        flat = [v for p in parts for v in p]
        if len(set(flat)) != len(flat):
            raise BadPartition("parts are not disjoint")
        if sorted(flat) != list(range(len(flat))):
            raise VertexOutOfRange("vertex ids must be exactly 0..N-1")
        part_of = {v: i for i, p in enumerate(parts) for v in p}
        edges = tuple(tuple(e) for e in self.edges)
        seen = set()
        for e in edges:
            if len(e) != self.k:
                raise EdgeArityMismatch(f"edge {e} does not have {self.k} entries")
            for i, v in enumerate(e):
                if v not in part_of:
                    raise VertexOutOfRange(f"edge {e} uses unknown vertex {v}")
                if part_of[v] != i:
                    raise BadPartition(f"edge {e}: vertex {v} at position {i} lies in part {part_of[v]}")
            if e in seen:
                raise DuplicateEdge(f"edge {e} listed twice")
            seen.add(e)
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "edges", edges)

    @property
    def num_vertices(self) -> int:
        return sum(len(p) for p in self.parts)

    def part_of(self) -> dict[int, int]:
        return {v: i for i, p in enumerate(self.parts) for v in p}

    def underlying(self) -> Hypergraph:
        return Hypergraph(self.num_vertices, self.k, self.edges)


def shadow_sets(edges: Sequence[frozenset], e: frozenset) -> list[Member]:
    """Maximal intersections of ``e`` with the other members of ``edges``."""
    others = [e & f for f in edges if f != e]
    if not others:
        return []
    return _maximal(others)


def shadow(H: Hypergraph, e: Iterable[int]) -> list[Member]:
    """The shadow cast by the other edges of ``H`` on the edge ``e``.

    The result is ``[()]`` when every intersection is empty and ``[]`` when
    ``e`` is the only edge.
    """
    key = tuple(sorted(e))
    if not H.has_edge(key):
        raise EdgeNotPresent(f"{key} is not an edge")
    return shadow_sets([frozenset(f) for f in H.edges], frozenset(key))


def _fits(shadow_members, e: Edge, family: SubsetFreeCollection) -> bool:
    # relabel the ground set e as positions 0..k-1 and test shadow <= family
    pos = {v: i for i, v in enumerate(e)}
    local = [frozenset(pos[v] for v in s) for s in shadow_members]
    return find_cover_bijection(local, family.members, family.k) is not None


def adapted_ordering(H: Hypergraph, family: SubsetFreeCollection) -> Optional[list[Edge]]:
    """An edge ordering witnessing that ``H`` is adapted to ``family``, or ``None``.

    Greedy peeling: any edge whose shadow on the remaining edges fits the family
    may be removed, because shadows only shrink as edges are deleted. The peel
    order reversed is a witness ordering.
    """
    if H.k != family.k:
        raise ArityMismatch(f"hypergraph is {H.k}-uniform but family lives on [{family.k}]")
    remaining = [frozenset(e) for e in H.edges]
    peeled: list[Edge] = []
    while remaining:
        for idx, f in enumerate(remaining):
            e = tuple(sorted(f))
            if _fits(shadow_sets(remaining, f), e, family):
                peeled.append(e)
                del remaining[idx]
                break
        else:
            return None
    return peeled[::-1]


def is_adapted(H: Hypergraph, family: SubsetFreeCollection) -> bool:
    return adapted_ordering(H, family) is not None


def check_ordering(ordering: Sequence[Edge], family: SubsetFreeCollection) -> bool:
    """Replay an ordering through the definition: every prefix shadow fits."""
    fs = [frozenset(e) for e in ordering]
    for i, e in enumerate(ordering):
        prefix = fs[: i + 1]
        if not _fits(shadow_sets(prefix, fs[i]), tuple(sorted(e)), family):
            return False
    return True


def strong_adaptation_failure(
    P: PartiteHypergraph, family: SubsetFreeCollection
) -> Optional[Edge]:
    """The first edge whose part-shadow is not strongly below ``family``, else ``None``.

    Part-projections of a shadow can nest, so they are maximalized before the
    comparison.
    """
    if P.k != family.k:
        raise ArityMismatch(f"pattern is {P.k}-partite but family lives on [{family.k}]")
    part = P.part_of()
    fs = [frozenset(e) for e in P.edges]
    targets = family.members
    for e, f in zip(P.edges, fs):
        sh = shadow_sets(fs, f)
        if not sh:
            continue
        projected = _maximal([frozenset(part[v] for v in s) for s in sh])
        if not leq_strong_sets((frozenset(s) for s in projected), targets):
            return e
    return None


def is_strongly_adapted(P: PartiteHypergraph, family: SubsetFreeCollection) -> bool:
    return strong_adaptation_failure(P, family) is None
