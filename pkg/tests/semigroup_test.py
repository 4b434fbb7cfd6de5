from itertools import combinations
import random

import numpy as np
import pytest

from cliffsemi import (BaseMismatchError, EmptyInputError, NotASemigroupError,
                       NotCofiniteError, NumericalSemigroup, ParseError,
                       ValueIdeal, canonical_ideal, count_semigroups_by_genus,
                       enumerate_ideals, enumerate_semigroups, from_gaps,
                       from_generators, ideal_difference, ideal_prefixes,
                       make_sheaf, parse_semigroup)

# number of semigroups of each genus, 0 to 10
GENUS_COUNTS = [1, 1, 2, 4, 7, 12, 23, 39, 67, 118, 204]


def _brute_semigroups(max_genus):
    # every gap set with Frobenius number below 2g whose complement is closed
    found = {NumericalSemigroup(0, 0)}
    pool = range(1, 2 * max_genus)
    for size in range(1, max_genus + 1):
        for gaps in combinations(pool, size):
            try:
                found.add(from_gaps(gaps))
            except NotASemigroupError:
                continue
    return found


def _brute_ideals(S):
    gaps = S.gaps
    small = [s for s in S.small_elements if s > 0]
    found = set()
    for size in range(len(gaps) + 1):
        for extra in combinations(gaps, size):
            members = set(S.small_elements) | set(extra)
            closed = all(
                x + s >= S.conductor or x + s in members
                for x in extra for s in small + [S.conductor]
            )
            if closed:
                found.add(frozenset(members))
    return found


# ------------------------------------------------------------- construction
def test_from_generators_plane_curve():
    S = from_generators([5, 6])
    assert S.small_elements == [0, 5, 6, 10, 11, 12, 15, 16, 17, 18]
    assert S.gaps == [1, 2, 3, 4, 7, 8, 9, 13, 14, 19]
    assert S.frobenius == 19
    assert S.conductor == 20
    assert S.genus == 10
    assert S.multiplicity == 5
    assert S.min_generators == [5, 6]


def test_from_generators_redundant_input():
    S = from_generators([9, 6, 8, 12, 6])
    assert S.min_generators == [6, 8, 9]
    assert S.gaps == [1, 2, 3, 4, 5, 7, 10, 11, 13, 19]
    assert S.genus == 10


def test_full_monoid():
    N = from_generators([1])
    assert N.is_smooth
    assert N.gaps == []
    assert N.frobenius == -1
    assert N.genus == 0
    assert N.multiplicity == 1
    assert N.min_generators == [1]
    assert N == from_gaps([])
    assert N.is_gorenstein()
    assert not N.is_nearly_normal()


def test_from_generators_errors():
    with pytest.raises(NotCofiniteError):
        from_generators([4, 6])
    with pytest.raises(EmptyInputError):
        from_generators([])
    with pytest.raises(ValueError):
        from_generators([0, 3])
    with pytest.raises(TypeError):
        from_generators([2.5, 3])


def test_from_gaps_inverse():
    S = from_gaps([1, 2, 3, 4, 7, 8, 9, 13, 14, 19])
    assert S == from_generators([5, 6])
    assert S.min_generators == [5, 6]


def test_from_gaps_reports_first_violation():
    with pytest.raises(NotASemigroupError) as excinfo:
        from_gaps([2])
    assert excinfo.value.pair == (1, 1)

    with pytest.raises(NotASemigroupError) as excinfo:
        from_gaps([1, 4])
    assert excinfo.value.pair == (2, 2)
    assert from_gaps([1, 2, 3, 6]).small_elements == [0, 4, 5]


def test_parse_semigroup():
    assert parse_semigroup('5,9,13,17,21') == from_generators(
        [5, 9, 13, 17, 21])
    assert parse_semigroup(' gaps: 1, 2 ') == from_generators([3, 4, 5])
    assert parse_semigroup('gaps:') == from_generators([1])
    with pytest.raises(ParseError):
        parse_semigroup('5,x')
    with pytest.raises(EmptyInputError):
        parse_semigroup(',')


def test_membership():
    S = from_generators([3, 10, 14])
    assert S.gaps == [1, 2, 4, 5, 7, 8, 11]
    assert S.small_elements == [0, 3, 6, 9, 10]
    assert 9 in S and 11 not in S and 12 in S and 1000 in S
    assert -3 not in S

    mask = S.membership_mask
    assert mask.dtype == np.bool_
    assert len(mask) == S.conductor + 1
    assert mask[S.conductor]
    assert list(np.flatnonzero(~mask)) == S.gaps


def test_to_dict():
    data = from_generators([5, 9, 13, 17, 21]).to_dict()
    assert data == {
        'min_generators': [5, 9, 13, 17, 21],
        'gaps': [1, 2, 3, 4, 6, 7, 8, 11, 12, 16],
        'frobenius': 16,
        'genus': 10,
        'gorenstein': False,
        'nearly_normal': False,
    }


# --------------------------------------------------------- canonical ideal
def test_canonical_ideal_symmetric():
    S = from_generators([5, 6])
    K = canonical_ideal(S)
    assert K.members_below(S.conductor) == S.small_elements
    assert K.tail_start == S.conductor
    assert S.is_gorenstein() and S.is_symmetric()


def test_canonical_ideal_non_gorenstein():
    S = from_gaps([1, 2, 4, 5, 7, 8, 11])
    assert S.small_elements == [0, 3, 6, 9, 10]
    K = canonical_ideal(S)
    assert K.members_below(12) == [0, 3, 4, 6, 7, 9, 10]
    assert K.tail_start == 12
    assert K.contains_base()
    assert not S.is_gorenstein() and not S.is_symmetric()


def test_canonical_ideal_full_monoid():
    N = from_generators([1])
    assert canonical_ideal(N).tail_start == 0


def test_gorenstein_examples():
    assert from_generators([6, 8, 9]).is_gorenstein()
    assert not from_generators([5, 9, 13, 17, 21]).is_gorenstein()


def test_nearly_normal():
    assert from_generators([3, 4, 5]).is_nearly_normal()
    assert not from_generators([5, 6]).is_nearly_normal()


def test_symmetry_tests_agree_up_to_genus_10():
    for S in enumerate_semigroups(10):
        by_conductor = S.conductor == 2 * S.genus
        assert S.is_gorenstein() == by_conductor == S.is_symmetric(), S


def test_semigroup_structure_up_to_genus_8():
    for S in enumerate_semigroups(8):
        if S.is_smooth:
            continue
        assert S.frobenius not in S
        assert S.conductor in S
        assert len(S.gaps) == S.genus
        assert S.multiplicity == min(S.small_elements[1:] + [S.conductor])
        assert from_generators(S.min_generators) == S


# ------------------------------------------------------------------ ideals
def test_ideals_small_examples():
    S = from_generators([2, 5])
    ideals = [V.members_below(5) for V in enumerate_ideals(S)]
    assert ideals == [[0, 2, 4], [0, 2, 3, 4], [0, 1, 2, 3, 4]]

    # 1 + S and 2 + S both stay inside S ∪ {1, 2}, so all four subsets close
    T = from_generators([3, 4, 5])
    ideals = [V.members_below(3) for V in enumerate_ideals(T)]
    assert ideals == [[0], [0, 1], [0, 2], [0, 1, 2]]

    N = from_generators([1])
    assert len(list(enumerate_ideals(N))) == 1


def test_ideals_match_brute_force_up_to_genus_8():
    for S in enumerate_semigroups(8):
        found = [frozenset(V.members_below(S.conductor))
                 for V in enumerate_ideals(S)]
        assert len(found) == len(set(found)), S
        assert set(found) == _brute_ideals(S), S


def test_ideals_are_ideals():
    for S in enumerate_semigroups(6):
        for V in enumerate_ideals(S):
            assert V.is_ideal()
            assert V.contains_base()
            assert ValueIdeal.from_generators(S, V.min_generators) == V


def test_prefixes_reproduce_stream():
    for gens in ([5, 6], [6, 8, 9], [3, 7], [4, 7, 10, 13]):
        S = from_generators(gens)
        full = list(enumerate_ideals(S))
        for depth in (0, 1, 3, 5):
            split = [V for prefix in ideal_prefixes(S, depth)
                     for V in enumerate_ideals(S, prefix)]
            assert split == full, (gens, depth)


def test_value_ideal_from_generators():
    S = from_generators([5, 6])
    V = ValueIdeal.from_generators(S, [0, 4])
    assert V.members_below(20) == [0, 4, 5, 6, 9, 10, 11, 12, 14, 15, 16,
                                   17, 18, 19]
    assert V.tail_start == 14
    assert V.min_generators == [0, 4]
    assert V.is_ideal()
    assert list(np.flatnonzero(V.mask)) == \
        V.members_below(V.window + 1)
    with pytest.raises(EmptyInputError):
        ValueIdeal.from_generators(S, [])


def test_value_ideal_generators_match_translates():
    for S in enumerate_semigroups(5):
        span = 2 * S.conductor + 4
        for gens in combinations(range(span // 2), 2):
            V = ValueIdeal.from_generators(S, gens)
            for n in range(span):
                expected = any(S.contains(n - g) for g in gens if n >= g)
                assert V.contains(n) == expected, (S, gens, n)


def test_contains_base_with_tail_below_conductor():
    S = from_generators([5, 6])
    N = ValueIdeal(S, (1 << S.conductor) - 1, S.conductor)
    assert N.tail_start == 0
    assert N.contains(0) and N.contains(5)
    assert N.contains_base()

    assert ValueIdeal.from_generators(S, [0, 4]).contains_base()
    assert not ValueIdeal.from_generators(S, [1]).contains_base()
    assert not ValueIdeal.from_generators(S, [4, 5]).contains_base()


def test_contains_base_matches_membership():
    for S in enumerate_semigroups(6):
        for V in enumerate_ideals(S):
            assert V.contains_base()
        for gens in combinations(range(1, S.conductor + 2), 2):
            V = ValueIdeal.from_generators(S, gens)
            members = [s for s in range(V.window + 1) if S.contains(s)]
            assert V.contains_base() == all(V.contains(s) for s in members)


# ----------------------------------------------------------- ideal algebra
def test_hom_into_canonical_ideal():
    S = from_generators([5, 6])
    K = canonical_ideal(S)
    F = make_sheaf(S, [4, 5, 6]).value_ideal
    dual = ideal_difference(K, F)
    assert [z for z in range(13) if z in dual] == [6, 11, 12]


def test_difference_identities():
    for gens in ([5, 6], [3, 10, 14], [6, 8, 9], [2, 7]):
        S = from_generators(gens)
        base = ValueIdeal(S, S.bits, S.conductor)
        K = canonical_ideal(S)
        assert ideal_difference(base, base) == base
        assert ideal_difference(K, base) == K


def test_difference_property():
    rng = random.Random(11)
    semigroups = [S for S in enumerate_semigroups(7) if S.genus >= 3]
    for S in rng.sample(semigroups, 12):
        ideals = list(enumerate_ideals(S))
        for _ in range(6):
            A, B = rng.choice(ideals), rng.choice(ideals)
            D = ideal_difference(A, B)
            span = A.tail_start + B.tail_start + 1
            for z in range(span + 3):
                expected = all(A.contains(z + b)
                               for b in range(span) if B.contains(b))
                assert D.contains(z) == expected, (S, z)


def test_difference_base_mismatch():
    A = canonical_ideal(from_generators([5, 6]))
    B = canonical_ideal(from_generators([6, 8, 9]))
    with pytest.raises(BaseMismatchError):
        ideal_difference(A, B)


# -------------------------------------------------------------- semigroups
def test_enumerate_semigroups_small():
    assert list(enumerate_semigroups(0)) == [from_generators([1])]
    assert len(list(enumerate_semigroups(2))) == 4


def test_counts_by_genus():
    assert count_semigroups_by_genus(10) == GENUS_COUNTS


def test_enumeration_matches_brute_force_up_to_genus_8():
    listed = list(enumerate_semigroups(8))
    assert len(listed) == len(set(listed))
    assert set(listed) == _brute_semigroups(8)


def test_enumerate_semigroups_rejects_bad_bound():
    with pytest.raises(ValueError):
        list(enumerate_semigroups(-1))
    with pytest.raises(TypeError):
        list(enumerate_semigroups(2.0))
