import itertools
import random

import pytest

from quasirand.errors import (
    ArityMismatch,
    BadPartition,
    DuplicateEdge,
    EdgeArityMismatch,
    EdgeNotPresent,
    VertexOutOfRange,
)
from quasirand.families import family_choose, validate
from quasirand.hypergraph import (
    Hypergraph,
    PartiteHypergraph,
    adapted_ordering,
    check_ordering,
    is_adapted,
    is_strongly_adapted,
    shadow,
    strong_adaptation_failure,
)


def test_hypergraph_canonical_and_errors():
    H = Hypergraph(4, 2, ((2, 1), (0, 3)))
    assert H.edges == ((0, 3), (1, 2))
    assert H.has_edge((2, 1))
    with pytest.raises(EdgeArityMismatch):
        Hypergraph(4, 3, ((0, 0, 1),))
    with pytest.raises(VertexOutOfRange):
        Hypergraph(3, 2, ((0, 3),))
    with pytest.raises(DuplicateEdge):
        Hypergraph(3, 2, ((0, 1), (1, 0)))


def test_density():
    assert Hypergraph.complete(6, 3).density() == 1.0
    assert Hypergraph(5, 2, ((0, 1),)).density() == pytest.approx(0.1)


def test_partite_validation():
    P = PartiteHypergraph(2, ((0, 1), (2,)), ((0, 2), (1, 2)))
    assert P.num_vertices == 3
    with pytest.raises(BadPartition):
        PartiteHypergraph(2, ((0, 1), (2,)), ((2, 0),))
    with pytest.raises(BadPartition):
        PartiteHypergraph(2, ((0, 1), (1,)), ())
    with pytest.raises(VertexOutOfRange):
        PartiteHypergraph(2, ((0,), (5,)), ())


def test_shadow_cases():
    H = Hypergraph(5, 3, ((0, 1, 2), (1, 2, 3), (2, 3, 4)))
    assert shadow(H, (1, 2, 3)) == [(1, 2), (2, 3)]
    assert shadow(H, (0, 1, 2)) == [(1, 2)]
    assert shadow(Hypergraph(3, 3, ((0, 1, 2),)), (0, 1, 2)) == []
    assert shadow(Hypergraph(6, 3, ((0, 1, 2), (3, 4, 5))), (0, 1, 2)) == [()]
    with pytest.raises(EdgeNotPresent):
        shadow(H, (0, 1, 4))


def test_linear_hypergraph_is_singleton_adapted():
    # Fano plane: any two lines meet in one point
    fano = Hypergraph(7, 3, ((0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)))
    assert is_adapted(fano, family_choose(3, 1))


def test_tight_path_needs_pairs():
    path = Hypergraph(5, 3, ((0, 1, 2), (1, 2, 3), (2, 3, 4)))
    assert not is_adapted(path, family_choose(3, 1))
    assert is_adapted(path, validate([(0, 1)], 3))
    order = adapted_ordering(path, validate([(0, 1)], 3))
    assert check_ordering(order, validate([(0, 1)], 3))


def test_arity_mismatch():
    with pytest.raises(ArityMismatch):
        is_adapted(Hypergraph(3, 2, ((0, 1),)), family_choose(3, 1))


def _brute_adapted(H, fam):
    return any(check_ordering(list(p), fam) for p in itertools.permutations(H.edges))


def test_peeling_matches_brute_force_small():
    rng = random.Random(7)
    for _ in range(60):
        k = rng.choice([2, 3])
        n = rng.randint(k, 6)
        pool = list(itertools.combinations(range(n), k))
        edges = rng.sample(pool, rng.randint(1, min(4, len(pool))))
        H = Hypergraph(n, k, tuple(edges))
        for fam in (family_choose(k, 1), validate([tuple(range(k - 1))], k)):
            assert is_adapted(H, fam) == _brute_adapted(H, fam)


def test_strong_adaptation_failure_reports_edge():
    # two edges sharing parts 0 and 1 need a member covering {0, 1}
    P = PartiteHypergraph(3, ((0,), (1,), (2, 3)), ((0, 1, 2), (0, 1, 3)))
    assert strong_adaptation_failure(P, family_choose(3, 1)) == (0, 1, 2)
    assert is_strongly_adapted(P, validate([(0, 1)], 3))
    # covering by a relabeled member is not enough for the strong order
    assert not is_strongly_adapted(P, validate([(1, 2)], 3))
