"""Text and JSON file formats.

Edge list: a header line ``k n m`` followed by ``m`` lines of ``k`` vertex ids.
Blank lines and lines starting with ``#`` are ignored. Emitting writes edges
sorted, one per line, so ``emit(parse(s))`` is the canonical form of ``s``.

Partite JSON: ``{"k": int, "parts": [[ids]], "edges": [[one id per part]]}``;
the ``M_k[I]`` form adds ``"family"`` and ``"labels"``.
"""

from __future__ import annotations

import json
from typing import Union

from .errors import DuplicateEdge, EdgeArityMismatch, MalformedHeader, VertexOutOfRange
from .families import SubsetFreeCollection, parse_family, validate
from .hypergraph import Hypergraph, PartiteHypergraph
from .mk import MkHypergraph


def _lines(text: str):
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            yield line


def parse_subsets(text: str) -> tuple[int, int, list[tuple[int, ...]]]:
    """Parse the edge-list layout without requiring ``k >= 1``.

    Returns ``(k, n, subsets)`` with each subset sorted. Witness files reuse this.
    """
    lines = list(_lines(text))
    if not lines:
        raise MalformedHeader("empty input: expected a 'k n m' header")
    head = lines[0].split()
    try:
        k, n, m = (int(t) for t in head)
    except ValueError:
        raise MalformedHeader(f"header must be three integers 'k n m', got {lines[0]!r}") from None
    if k < 0 or n < 0 or m < 0:
        raise MalformedHeader(f"header values must be non-negative, got {lines[0]!r}")
    body = lines[1:]
    if len(body) != m and not (k == 0 and m == 1 and not body):
        raise MalformedHeader(f"header announces {m} edges but {len(body)} lines follow")
    if k == 0:
        return 0, n, [()] * min(m, 1)
    out, seen = [], set()
    for line in body:
        try:
            e = tuple(int(t) for t in line.split())
        except ValueError:
            raise EdgeArityMismatch(f"non-integer vertex in {line!r}") from None
        if len(e) != k or len(set(e)) != k:
            raise EdgeArityMismatch(f"edge {line!r} does not have {k} distinct vertices")
        if min(e) < 0 or max(e) >= n:
            raise VertexOutOfRange(f"edge {line!r} has a vertex outside [0, {n})")
        s = tuple(sorted(e))
        if s in seen:
            raise DuplicateEdge(f"edge {s} listed twice")
        seen.add(s)
        out.append(s)
    return k, n, out


def parse_hypergraph(text: str) -> Hypergraph:
    k, n, edges = parse_subsets(text)
    if k < 1:
        raise MalformedHeader("a hypergraph needs k >= 1")
    return Hypergraph(n, k, tuple(edges))


def emit_subsets(k: int, n: int, subsets) -> str:
    rows = sorted(tuple(sorted(s)) for s in subsets)
    out = [f"{k} {n} {len(rows)}"]
    out.extend(" ".join(str(v) for v in r) for r in rows if r)
    return "\n".join(out) + "\n"


def emit_hypergraph(H: Hypergraph) -> str:
    return emit_subsets(H.k, H.n, H.edges)


def partite_to_json(P: PartiteHypergraph) -> dict:
    return {"k": P.k, "parts": [list(p) for p in P.parts], "edges": [list(e) for e in P.edges]}


def partite_from_json(obj: Union[dict, str]) -> PartiteHypergraph:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        k, parts, edges = int(obj["k"]), obj["parts"], obj["edges"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedHeader(f"partite JSON needs integer 'k', 'parts' and 'edges': {exc}") from None
    return PartiteHypergraph(k, tuple(tuple(int(v) for v in p) for p in parts),
                             tuple(tuple(int(v) for v in e) for e in edges))


def mk_to_json(M: MkHypergraph) -> dict:
    return M.to_json()


def family_from_json(obj, k: int) -> SubsetFreeCollection:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, list) or not all(isinstance(s, list) for s in obj):
        raise MalformedHeader("family JSON must be an array of arrays of integers")
    return validate(obj, k)


def read_family(text: str, k: int) -> SubsetFreeCollection:
    """Either the dotted text syntax (``0.1,1.2``) or a JSON array of arrays."""
    t = text.strip()
    if t.startswith("["):
        return family_from_json(t, k)
    return parse_family(t, k)


def read_pattern(text: str):
    """A partite pattern from JSON, otherwise a plain hypergraph from an edge list."""
    if text.lstrip().startswith("{"):
        return partite_from_json(text)
    return parse_hypergraph(text)
