from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intpoints.enumerator import enumerate_lists
from intpoints.exact import squarefree_part
from intpoints.metric import (
    DegeneratePrefix,
    DegenerateSimplex,
    DistanceMatrix,
    characteristic,
    cmd,
    coordinates,
    is_general_position,
    is_realizable,
    is_semi_general_position,
    on_common_sphere,
    point_set_characteristic,
    simplex_characteristics,
    top_level_realizable,
    volume_squared,
)
import oracle

TRI_345 = DistanceMatrix([[0, 5, 4], [5, 0, 3], [4, 3, 0]])
UNIT_TET = DistanceMatrix([[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 0]])
# corners of a 3x4 rectangle
RECT = DistanceMatrix([[0, 3, 5, 4], [3, 0, 4, 5], [5, 4, 0, 3], [4, 5, 3, 0]])


def test_distance_matrix_validation():
    with pytest.raises(ValueError):
        DistanceMatrix([[0, 1], [2, 0]])
    with pytest.raises(ValueError):
        DistanceMatrix([[1, 1], [1, 0]])
    with pytest.raises(ValueError):
        DistanceMatrix([[0, 0], [0, 0]])
    with pytest.raises(ValueError):
        DistanceMatrix([[0, 1, 1], [1, 0, 1]])


def test_word_roundtrip():
    assert TRI_345.word == (5, 4, 3)
    assert DistanceMatrix.from_word(TRI_345.word) == TRI_345
    assert TRI_345.diameter == 5
    assert UNIT_TET.truncate().word == (1, 1, 1)


def test_cmd_examples():
    one = DistanceMatrix([[0]])
    assert cmd(one) == -1
    assert cmd(DistanceMatrix([[0, 1], [1, 0]])) == 2
    assert cmd(TRI_345) == -576
    assert cmd(TRI_345, [2, 0, 1]) == -576
    with pytest.raises((ValueError, IndexError)):
        cmd(TRI_345, [0, 3])


def test_volume_examples():
    assert volume_squared(DistanceMatrix([[0, 1], [1, 0]]), dim=1) == 1
    assert volume_squared(TRI_345, dim=2) == 36
    line = DistanceMatrix([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    assert volume_squared(line, dim=2) == 0
    assert volume_squared(UNIT_TET, dim=3) == Fraction(1, 72)


def test_characteristic_examples():
    assert characteristic(TRI_345, m=2) == 1
    assert characteristic(DistanceMatrix([[0, 1, 1], [1, 0, 1], [1, 1, 0]]), m=2) == 3
    assert characteristic(UNIT_TET, m=3) == 2
    with pytest.raises(DegenerateSimplex):
        characteristic(DistanceMatrix([[0, 1, 2], [1, 0, 1], [2, 1, 0]]), m=2)


def test_realizability_examples():
    assert is_realizable(TRI_345, 2)
    assert not is_realizable(UNIT_TET, 2)
    assert is_realizable(UNIT_TET, 3)
    assert top_level_realizable(RECT, 2)
    assert top_level_realizable(RECT, 3)
    assert not is_realizable(DistanceMatrix([[0, 1, 3], [1, 0, 1], [3, 1, 0]]), 2)


def test_sphere_and_position_examples():
    assert on_common_sphere(RECT, 2)
    kite = DistanceMatrix.from_word((8, 5, 5, 5, 5, 6))
    assert is_realizable(kite, 2)
    assert not on_common_sphere(kite, 2)
    assert is_semi_general_position(RECT, 2)
    assert not is_general_position(RECT, 2)
    assert is_general_position(kite, 2)
    assert is_general_position(UNIT_TET, 3)
    # four points on a line
    flat = DistanceMatrix.from_word((2, 1, 1, 3, 1, 2))
    assert is_realizable(flat, 3)
    assert not is_semi_general_position(flat, 3)


def test_coordinates_examples():
    c = coordinates(DistanceMatrix([[0, 1], [1, 0]]), 1)
    assert c.k == (1,)
    assert c.q[1] == (1,)
    c = coordinates(TRI_345, 2)
    assert c.k == (1, 1)
    assert c.q[1] == (5, 0)
    assert c.q[2] == (Fraction(16, 5), Fraction(12, 5))
    c = coordinates(DistanceMatrix([[0, 2, 2], [2, 0, 2], [2, 2, 0]]), 2)
    assert c.k[1] == 3
    with pytest.raises(DegeneratePrefix):
        coordinates(DistanceMatrix([[0, 1, 2], [1, 0, 1], [2, 1, 0]]), 2)


def _enumerated(m, n, delta, position="semi-general"):
    return enumerate_lists(m, n, delta, position)[1].items


@pytest.mark.parametrize("m,n,delta", [(2, 4, 8), (2, 5, 9), (3, 4, 5), (3, 5, 8), (4, 6, 5)])
def test_coordinates_roundtrip(m, n, delta):
    sets = _enumerated(m, n, delta)
    assert sets
    for D in sets:
        c = coordinates(D, m)
        for i in range(n):
            assert c.q[i][i + 1 :] == tuple(0 for _ in c.q[i][i + 1 :])
            for j in range(n):
                assert c.squared_distance(i, j) == D[i, j] ** 2
        assert c.characteristic() == characteristic(D, list(range(m + 1)), m)


@pytest.mark.parametrize("m,n,delta", [(2, 4, 9), (2, 5, 10), (3, 5, 10), (3, 6, 17), (4, 6, 6)])
def test_characteristic_invariance(m, n, delta):
    for D in _enumerated(m, n, delta):
        assert len(simplex_characteristics(D, m)) == 1


@pytest.mark.parametrize("m,n,delta", [(2, 5, 6), (3, 5, 4), (3, 6, 5)])
def test_characteristic_invariance_with_flat_subsets(m, n, delta):
    lists = enumerate_lists(m, n, delta, "any")[0].items
    assert lists
    for D in lists:
        assert len(simplex_characteristics(D, m)) <= 1


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_volume_is_permutation_invariant(data):
    sets = _enumerated(3, 4, 6)
    D = data.draw(st.sampled_from(sets))
    perm = data.draw(st.permutations(range(4)))
    assert volume_squared(D, list(perm), 3) == volume_squared(D, None, 3)
    assert characteristic(D.relabel(perm), m=3) == characteristic(D, m=3)


def test_cmd_sign_pattern():
    for D in _enumerated(3, 5, 8):
        for r in range(1, 5):
            for subset in permutations(range(5), r):
                if list(subset) != sorted(subset):
                    continue
                assert (-1) ** r * cmd(D, list(subset)) > 0


def test_characteristic_from_determinant_and_coordinates_agree():
    for D in _enumerated(3, 4, 6):
        c = coordinates(D, 3)
        prod = 1
        for k in c.k:
            prod *= k
        assert squarefree_part(prod) == characteristic(D, m=3)


def test_realizability_matches_gram_oracle():
    import random

    rng = random.Random(7)
    for _ in range(400):
        n = rng.randint(2, 5)
        w = [rng.randint(1, 4) for _ in range(n * (n - 1) // 2)]
        D = DistanceMatrix.from_word(w)
        for m in (1, 2, 3):
            assert is_realizable(D, m) == oracle.realizable([list(r) for r in D.rows], m)


def test_point_set_characteristic_skips_flat_simplices():
    D = DistanceMatrix.from_word((2, 1, 1, 3, 1, 2))
    assert point_set_characteristic(D, 3) is None
    assert point_set_characteristic(UNIT_TET, 3) == 2
