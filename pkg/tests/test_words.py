import pytest
from hypothesis import given
from hypothesis import strategies as st

from margulis.errors import NonReducedWord
from margulis.words import (all_words_brute, check_reduced, conjugacy_representatives,
                            count_reduced, free_reduce, inverse_word, is_cyclically_reduced,
                            is_reduced, necklace, reduced_words, rotations, words_up_to)

letter = st.sampled_from([1, -1, 2, -2])
word = st.lists(letter, max_size=12).map(tuple)


def brute_classes(k, n):
    """Rotation classes of cyclically reduced strings, from the full string list."""
    seen = set()
    for m in range(1, n + 1):
        for w in all_words_brute(k, m):
            if is_reduced(w) and is_cyclically_reduced(w):
                seen.add(frozenset(rotations(w)))
    return seen


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_reduced_count_matches_brute(n):
    brute = [w for w in all_words_brute(2, n) if is_reduced(w)]
    listed = list(reduced_words(2, n))
    assert len(listed) == len(brute) == count_reduced(2, n)
    assert set(listed) == set(brute)


def test_depth3_count():
    assert len(list(reduced_words(2, 3))) == 36


def test_enumeration_is_deterministic():
    assert words_up_to(2, 4) == words_up_to(2, 4)
    assert words_up_to(2, 1) == [(1,), (-1,), (2,), (-2,)]


@pytest.mark.parametrize("n,expected", [(1, 4), (3, 24), (4, 50)])
def test_class_counts(n, expected):
    reps = conjugacy_representatives(2, n)
    assert len(reps) == expected == len(brute_classes(2, n))
    assert len({frozenset(rotations(w)) for w in reps}) == len(reps)


def test_inverse_classes_are_distinct():
    reps = conjugacy_representatives(2, 2)
    assert (1,) in reps and (-1,) in reps
    assert (1, 1) in reps  # proper powers kept


def test_check_reduced():
    with pytest.raises(NonReducedWord):
        check_reduced((1, -1))
    assert check_reduced([2, 2]) == (2, 2)


@given(word)
def test_free_reduce_is_reduced_and_idempotent(w):
    r = free_reduce(w)
    assert is_reduced(r)
    assert free_reduce(r) == r


@given(word)
def test_inverse_cancels(w):
    assert free_reduce(free_reduce(w) + inverse_word(free_reduce(w))) == ()


@given(word.filter(lambda w: len(w) > 0))
def test_necklace_is_a_rotation(w):
    assert necklace(w) in rotations(w)
    assert all(necklace(r) == necklace(w) for r in rotations(w))
