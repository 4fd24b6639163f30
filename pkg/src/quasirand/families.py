"""Subset-free collections (antichains) of subsets of ``[k] = {0, ..., k-1}``.

A :class:`SubsetFreeCollection` names a notion of quasirandomness. Members are
stored as sorted tuples, ordered by size and then lexicographically, so two
collections with the same members compare and serialize identically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import (
    ArityMismatch,
    BadLevel,
    BadSize,
    BadSizes,
    EmptyCollection,
    EmptyInput,
    IndexOutOfRange,
    NotAntichain,
    SizeMismatch,
)

Member = tuple[int, ...]


def canonical_order(sets: Iterable[Iterable[int]]) -> list[Member]:
    """Deduplicate and sort members by (size, lexicographic)."""
    unique = {tuple(sorted(set(s))) for s in sets}
    return sorted(unique, key=lambda s: (len(s), s))


@dataclass(frozen=True)
class SubsetFreeCollection:
    k: int
    sets: tuple[Member, ...]

    def __post_init__(self):
        # direct construction goes through the same checks as validate()
        checked = _check(self.sets, self.k)
        object.__setattr__(self, "sets", tuple(checked))

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    @property
    def members(self) -> list[frozenset[int]]:
        return [frozenset(s) for s in self.sets]

    def to_text(self) -> str:
        return format_family(self.sets)

    def to_json(self) -> list[list[int]]:
        return [list(s) for s in self.sets]

    def __str__(self):
        inner = ", ".join("{" + ",".join(map(str, s)) + "}" for s in self.sets)
        return "{" + inner + "}"


def _check(sets, k) -> list[Member]:
    if k < 1:
        raise IndexOutOfRange(f"arity must be positive, got {k}")
    members = canonical_order(sets)
    if not members:
        raise EmptyCollection("a subset-free collection needs at least one member")
    for s in members:
        for x in s:
            if not 0 <= x < k:
                raise IndexOutOfRange(f"element {x} of {set(s)} is outside [0, {k})")
    fs = [frozenset(s) for s in members]
    for a, b in itertools.combinations(fs, 2):
        # canonical order puts the smaller set first
        if a < b:
            raise NotAntichain(a, b)
    return members


def validate(sets: Iterable[Iterable[int]], k: int) -> SubsetFreeCollection:
    """Check the antichain and range conditions and return the canonical collection.

    Duplicate members are merged.
    """
    return SubsetFreeCollection(k, tuple(tuple(s) for s in sets))


def family_partition(k: int, sizes: Sequence[int]) -> SubsetFreeCollection:
    """Consecutive blocks of the given sizes, e.g. ``(3, [2, 1]) -> {{0,1},{2}}``."""
    if not sizes or any(s < 1 for s in sizes) or sum(sizes) != k:
        raise BadSizes(f"block sizes {list(sizes)} must be positive and sum to {k}")
    blocks, start = [], 0
    for s in sizes:
        blocks.append(range(start, start + s))
        start += s
    return validate(blocks, k)


def family_choose(k: int, n: int) -> SubsetFreeCollection:
    """All ``n``-subsets of ``[k]``."""
    if not 1 <= n <= k:
        raise BadSize(f"need 1 <= n <= k, got n={n}, k={k}")
    return validate(itertools.combinations(range(k), n), k)


def family_deviation(k: int, l: int) -> SubsetFreeCollection:
    """The ``(k-1)``-subsets of ``[k]`` that contain ``{0, ..., l-1}``."""
    if not 1 <= l < k:
        raise BadLevel(f"need 1 <= l < k, got l={l}, k={k}")
    base = set(range(l))
    return validate(
        (s for s in itertools.combinations(range(k), k - 1) if base <= set(s)), k
    )


def maximalize(sets: Iterable[Iterable[int]]) -> list[Member]:
    """The inclusion-maximal members of a non-empty collection, canonically ordered."""
    fs = [frozenset(s) for s in sets]
    if not fs:
        raise EmptyInput("maximalize needs a non-empty collection")
    return _maximal(fs)


def _maximal(fs: Sequence[frozenset]) -> list[Member]:
    uniq = set(fs)
    keep = [a for a in uniq if not any(a < b for b in uniq)]
    return canonical_order(keep)


def _as_collection_pair(a, b):
    if a.k != b.k:
        raise ArityMismatch(f"collections live on [{a.k}] and [{b.k}]")


def leq_strong(a: SubsetFreeCollection, b: SubsetFreeCollection) -> bool:
    """True iff every member of ``a`` is contained in some member of ``b``."""
    _as_collection_pair(a, b)
    return leq_strong_sets(a.members, b.members)


def leq_strong_sets(small: Iterable[frozenset], big: Sequence[frozenset]) -> bool:
    big = list(big)
    return all(any(s <= t for t in big) for s in small)


def leq(a: SubsetFreeCollection, b: SubsetFreeCollection) -> bool:
    """True iff some bijection of the ground set carries ``b`` over ``a``."""
    return leq_witness(a, b) is not None


def leq_witness(
    a: SubsetFreeCollection, b: SubsetFreeCollection
) -> Optional[tuple[int, ...]]:
    """A bijection ``pi`` (``pi[w] = v``) with every member of ``a`` inside some ``pi(J)``.

    Returns ``None`` when no such bijection exists.
    """
    if a.k != b.k:
        raise SizeMismatch(f"ground sets have sizes {a.k} and {b.k}")
    return find_cover_bijection(a.members, b.members, a.k)


def find_cover_bijection(
    small: Sequence[frozenset], big: Sequence[frozenset], k: int
) -> Optional[tuple[int, ...]]:
    """Backtracking search for ``pi: [k] -> [k]`` with each ``I`` in ``small``
    contained in ``pi(J)`` for some ``J`` in ``big``.

    ``small`` may be any collection of subsets of ``[k]`` (it need not be an
    antichain); an empty ``small`` is covered by the identity.
    """
    small = [s for s in set(small) if s]
    if not small:
        return tuple(range(k))
    big = [frozenset(t) for t in big]
    if not big or max(map(len, small)) > max(map(len, big)):
        return None

    pi = [-1] * k
    used = [False] * k

    def coverable(s, assigned_upto):
        # s is coverable by J if the already-used targets inside s all lie in
        # pi(J) and the rest fit into J's unassigned slots
        s_used = {v for v in s if used[v]}
        s_free = len(s) - len(s_used)
        for t in big:
            image = {pi[w] for w in t if w < assigned_upto}
            if s_used <= image and s_free <= sum(1 for w in t if w >= assigned_upto):
                return True
        return False

    def search(w):
        if w == k:
            return True
        for v in range(k):
            if used[v]:
                continue
            pi[w], used[v] = v, True
            if all(coverable(s, w + 1) for s in small) and search(w + 1):
                return True
            pi[w], used[v] = -1, False
        return False

    if search(0):
        return tuple(pi)
    return None


def enumerate_subset_free(k: int, exclude_full: bool = False) -> list[SubsetFreeCollection]:
    """Every subset-free collection on ``[k]``, by brute force over the powerset.

    Practical for ``k <= 4``. With ``exclude_full`` the collection ``{[k]}`` is
    skipped (it is the only antichain containing ``[k]``).
    """
    subsets = [frozenset(c) for r in range(k + 1) for c in itertools.combinations(range(k), r)]
    out = []

    def extend(start, chosen):
        if chosen:
            out.append(validate(chosen, k))
        for i in range(start, len(subsets)):
            s = subsets[i]
            if all(not (s < c or c < s) for c in chosen):
                extend(i + 1, chosen + [s])

    extend(0, [])
    if exclude_full:
        full = tuple(range(k))
        out = [c for c in out if full not in c.sets]
    return sorted(out, key=lambda c: (len(c.sets), [(len(s), s) for s in c.sets]))


def parse_family(text: str, k: int) -> SubsetFreeCollection:
    """Parse ``"0.1,1.2"`` into ``{{0,1},{1,2}}``; ``"{}"`` denotes the empty member."""
    text = text.strip()
    if not text:
        raise EmptyCollection("empty family string")
    sets = []
    for token in text.split(","):
        token = token.strip()
        if token in ("{}", "∅"):
            sets.append(())
            continue
        try:
            sets.append(tuple(int(x) for x in token.split(".")))
        except ValueError:
            raise IndexOutOfRange(f"cannot parse member {token!r}") from None
    return validate(sets, k)


def format_family(sets: Iterable[Iterable[int]]) -> str:
    return ",".join(".".join(map(str, s)) if s else "{}" for s in sets)
