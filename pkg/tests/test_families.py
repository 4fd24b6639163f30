import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quasirand.errors import (
    BadLevel,
    BadSize,
    BadSizes,
    EmptyCollection,
    EmptyInput,
    IndexOutOfRange,
    NotAntichain,
    SizeMismatch,
)
from quasirand.families import (
    enumerate_subset_free,
    family_choose,
    family_deviation,
    family_partition,
    format_family,
    leq,
    leq_strong,
    leq_witness,
    maximalize,
    parse_family,
    validate,
)


def test_validate_canonical_order():
    I = validate([(2, 1), (0,)], 3)
    assert I.sets == ((0,), (1, 2))
    assert validate([(1, 2), (0,)], 3) == I


def test_validate_merges_duplicates():
    assert validate([(0, 1), (1, 0)], 2).sets == ((0, 1),)


def test_validate_errors():
    with pytest.raises(EmptyCollection):
        validate([], 3)
    with pytest.raises(IndexOutOfRange):
        validate([(0, 3)], 3)
    with pytest.raises(NotAntichain) as exc:
        validate([(0,), (0, 1)], 3)
    assert exc.value.pair == ((0,), (0, 1))


def test_empty_member_alone_is_fine():
    assert validate([()], 3).sets == ((),)
    with pytest.raises(NotAntichain):
        validate([(), (1,)], 3)


def test_constructors():
    assert family_partition(3, [2, 1]).sets == ((2,), (0, 1))
    assert family_choose(3, 2).sets == ((0, 1), (0, 2), (1, 2))
    assert family_deviation(4, 2).sets == ((0, 1, 2), (0, 1, 3))
    with pytest.raises(BadSizes):
        family_partition(3, [2, 2])
    with pytest.raises(BadSize):
        family_choose(3, 4)
    with pytest.raises(BadLevel):
        family_deviation(3, 3)


def test_maximalize():
    assert maximalize([(0,), (0, 1), (2,)]) == [(2,), (0, 1)]
    with pytest.raises(EmptyInput):
        maximalize([])


def test_leq_strong_vs_leq():
    a = validate([(0, 1)], 3)
    b = validate([(1, 2)], 3)
    assert not leq_strong(a, b)
    assert leq(a, b)
    pi = leq_witness(a, b)
    assert {pi[w] for w in (1, 2)} >= {0, 1}


def test_leq_size_mismatch():
    with pytest.raises(SizeMismatch):
        leq(validate([(0,)], 2), validate([(0,)], 3))


def test_singletons_below_exactly_the_covering_families():
    singles = family_choose(3, 1)
    for I in enumerate_subset_free(3):
        covers = set().union(*I.members) == {0, 1, 2}
        assert leq(singles, I) == covers


@pytest.mark.parametrize("k,count", [(1, 2), (2, 5), (3, 19), (4, 167)])
def test_enumerate_counts_are_dedekind_minus_one(k, count):
    # Dedekind numbers 3, 6, 20, 168 count the empty antichain too
    assert len(enumerate_subset_free(k)) == count
    assert len(enumerate_subset_free(k, exclude_full=True)) == count - 1


def test_parse_format_round_trip():
    I = parse_family("0.1,1.2", 3)
    assert I.sets == ((0, 1), (1, 2))
    assert format_family(I.sets) == "0.1,1.2"
    assert parse_family("{}", 2).sets == ((),)
    with pytest.raises(IndexOutOfRange):
        parse_family("0.x", 3)


def _leq_brute(a, b):
    for perm in itertools.permutations(range(a.k)):
        imgs = [frozenset(perm[w] for w in J) for J in b.members]
        if all(any(I <= t for t in imgs) for I in a.members):
            return True
    return False


_FAMILIES = {k: enumerate_subset_free(k) for k in (2, 3, 4)}


@settings(max_examples=300, deadline=None)
@given(st.sampled_from([2, 3, 4]), st.data())
def test_leq_matches_permutation_brute_force(k, data):
    fams = _FAMILIES[k]
    a = data.draw(st.sampled_from(fams))
    b = data.draw(st.sampled_from(fams))
    got = leq_witness(a, b)
    assert (got is not None) == _leq_brute(a, b)
    if got is not None:
        assert sorted(got) == list(range(k))
        imgs = [frozenset(got[w] for w in J) for J in b.members]
        assert all(any(I <= t for t in imgs) for I in a.members)


def test_leq_is_a_preorder_on_k3():
    fams = _FAMILIES[3]
    for a in fams:
        assert leq(a, a)
    for a, b, c in itertools.product(fams[::3], repeat=3):
        if leq(a, b) and leq(b, c):
            assert leq(a, c)
