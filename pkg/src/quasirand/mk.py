"""The doubling hypergraph ``M_k[I]``.

Vertices are pairs ``(j, tau)`` with ``tau`` assigning each member of ``I`` one
of ``'0'``, ``'1'`` or ``'*'``, and ``tau(I) == '*'`` exactly when ``j`` is in
``I``. Each ``sigma`` in ``{0,1}^I`` gives the edge of all ``(j, tau)`` with
``tau(I)`` in ``{sigma(I), '*'}``; it holds exactly one vertex per part.

Enumeration is deterministic: vertices by part ``j`` and then ``tau``
lexicographically (``'*'`` never varies), edges by ``sigma`` lexicographically,
both over the canonical member order of ``I``. Integer ids follow that order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import ArityMismatch, DegenerateFamily
from .families import SubsetFreeCollection
from .hypergraph import PartiteHypergraph

Tau = tuple[str, ...]
Sigma = tuple[int, ...]


@dataclass(frozen=True)
class MkHypergraph:
    family: SubsetFreeCollection
    underlying: PartiteHypergraph
    vertex_labels: tuple[tuple[int, Tau], ...]
    edge_labels: tuple[Sigma, ...]

    @property
    def k(self) -> int:
        return self.underlying.k

    @property
    def edges(self):
        return self.underlying.edges

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_labels)

    def edge_of(self, sigma: Sigma):
        return self.underlying.edges[self.edge_labels.index(tuple(sigma))]

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "family": self.family.to_json(),
            "parts": [list(p) for p in self.underlying.parts],
            "edges": [list(e) for e in self.underlying.edges],
            "labels": {
                str(v): {"j": j, "tau": list(tau)}
                for v, (j, tau) in enumerate(self.vertex_labels)
            },
        }


def _check(k: int, family: SubsetFreeCollection):
    if family.k != k:
        raise ArityMismatch(f"family lives on [{family.k}], not [{k}]")
    full = tuple(range(k))
    if full in family.sets:
        raise DegenerateFamily(
            f"member {set(full)} equals [k]: both edges would cover the same vertices"
        )


def mk_stats(k: int, family: SubsetFreeCollection) -> tuple[int, int]:
    """(vertex count, edge count) of ``M_k[family]`` without building it."""
    _check(k, family)
    members = family.members
    vertices = sum(2 ** sum(1 for I in members if j not in I) for j in range(k))
    return vertices, 2 ** len(members)


def build_mk(k: int, family: SubsetFreeCollection) -> MkHypergraph:
    _check(k, family)
    members = family.members

    labels: list[tuple[int, Tau]] = []
    ids: dict[tuple[int, Tau], int] = {}
    parts = []
    for j in range(k):
        choices = [("*",) if j in I else ("0", "1") for I in members]
        part = []
        for tau in itertools.product(*choices):
            ids[(j, tau)] = len(labels)
            part.append(len(labels))
            labels.append((j, tau))
        parts.append(tuple(part))

    edges, sigmas = [], []
    for sigma in itertools.product((0, 1), repeat=len(members)):
        edge = tuple(
            ids[(j, tuple("*" if j in I else str(s) for I, s in zip(members, sigma)))]
            for j in range(k)
        )
        edges.append(edge)
        sigmas.append(sigma)

    return MkHypergraph(
        family=family,
        underlying=PartiteHypergraph(k, tuple(parts), tuple(edges)),
        vertex_labels=tuple(labels),
        edge_labels=tuple(sigmas),
    )
