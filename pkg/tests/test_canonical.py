import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intpoints.canonical import beats, canonize, compare, is_canonical, is_semi_canonical, word
from intpoints.metric import DistanceMatrix
from oracle import brute_canonical_word


@st.composite
def matrices(draw, max_n=7, max_d=4):
    n = draw(st.integers(2, max_n))
    w = draw(st.lists(st.integers(1, max_d), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    return DistanceMatrix.from_word(w, n)


def _brute_semi(D):
    n = D.n
    if n <= 2:
        return True
    rows = [list(r) for r in D.rows]
    best = max(
        brute_canonical_word([[rows[i][j] for j in keep] for i in keep])
        for k in range(n)
        for keep in [[p for p in range(n) if p != k]]
    )
    return D.truncate().word == best


@settings(max_examples=1000, deadline=None)
@given(matrices())
def test_canonicity_matches_brute_force(D):
    best = brute_canonical_word([list(r) for r in D.rows])
    assert is_canonical(D) == (D.word == best)
    assert canonize(D).word == best


@settings(max_examples=1000, deadline=None)
@given(matrices(max_n=6, max_d=3))
def test_semi_canonicity_matches_brute_force(D):
    assert is_semi_canonical(D) == _brute_semi(D)


@settings(max_examples=300, deadline=None)
@given(matrices(max_n=6, max_d=3), st.randoms(use_true_random=False))
def test_canonize_is_a_class_invariant(D, rnd):
    perm = list(range(D.n))
    rnd.shuffle(perm)
    assert canonize(D.relabel(perm)) == canonize(D)
    assert is_canonical(canonize(D))


def test_examples():
    tri = DistanceMatrix([[0, 5, 4], [5, 0, 3], [4, 3, 0]])
    assert word(tri) == (5, 4, 3)
    assert is_canonical(tri)
    assert not is_canonical(DistanceMatrix.from_word((3, 4, 5)))
    assert canonize(DistanceMatrix.from_word((3, 4, 5))).word == (5, 4, 3)
    assert compare((5, 4, 3), (5, 4, 2)) == 1
    assert compare((5, 4, 3), (5, 4, 3)) == 0
    assert compare((4, 4, 3), (5, 4, 3)) == -1
    with pytest.raises(ValueError):
        compare((1,), (1, 1))
    # canonical implies semi-canonical
    assert is_semi_canonical(tri)


def test_canonical_implies_semi_canonical():
    rng = random.Random(3)
    for _ in range(2000):
        n = rng.randint(3, 6)
        D = DistanceMatrix.from_word([rng.randint(1, 3) for _ in range(n * (n - 1) // 2)], n)
        if is_canonical(D):
            assert is_semi_canonical(D)


def test_beats_on_subsets():
    D = DistanceMatrix.from_word((3, 3, 3, 2, 2, 2, 2, 2, 2, 2))
    rows = D.rows
    assert not beats(rows, [0, 1, 2, 3, 4], D.word)
    assert not beats(rows, [0, 1, 2, 3], D.word[:6])
    assert beats(rows, [0, 1, 2, 3], (2, 2, 2, 2, 2, 2))
