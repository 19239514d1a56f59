import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intpoints.exact import det_exact, factorize, is_probable_prime, isqrt, squarefree_part
from oracle import cofactor_det


def square_matrices(max_n=6, lo=-100, hi=100):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)
    )


@settings(max_examples=1000, deadline=None)
@given(square_matrices())
def test_det_matches_cofactor_expansion(mat):
    assert det_exact(mat) == cofactor_det(mat)


@settings(max_examples=200, deadline=None)
@given(square_matrices(max_n=6), st.data())
def test_det_repeated_row_is_zero(mat, data):
    if len(mat) < 2:
        return
    i = data.draw(st.integers(0, len(mat) - 1))
    j = data.draw(st.integers(0, len(mat) - 1).filter(lambda j: j != i))
    mat[j] = list(mat[i])
    assert det_exact(mat) == 0


def test_det_examples():
    assert det_exact([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert det_exact([[0, 1, 1], [1, 0, 1], [1, 1, 0]]) == 2
    cm = [[0, 1, 1, 1], [1, 0, 25, 16], [1, 25, 0, 9], [1, 16, 9, 0]]
    assert det_exact(cm) == -576


def test_det_rejects_bad_shapes():
    with pytest.raises(ValueError):
        det_exact([])
    with pytest.raises(ValueError):
        det_exact([[1, 2], [3]])


def test_isqrt_examples():
    assert isqrt(0) == (0, True)
    assert isqrt(25) == (5, True)
    assert isqrt(26) == (5, False)
    with pytest.raises(ValueError):
        isqrt(-1)


@given(st.integers(0, 10**40))
def test_isqrt_brackets(n):
    r, exact = isqrt(n)
    assert r * r <= n < (r + 1) ** 2
    assert exact == (r * r == n)


def test_factorize_examples():
    assert factorize(1) == []
    assert factorize(360) == [(2, 3), (3, 2), (5, 1)]
    assert factorize(576) == [(2, 6), (3, 2)]
    with pytest.raises(ValueError):
        factorize(0)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 10**24))
def test_factorize_reconstructs(n):
    fs = factorize(n)
    assert math.prod(p**e for p, e in fs) == n
    primes = [p for p, _ in fs]
    assert primes == sorted(set(primes))
    assert all(is_probable_prime(p) for p in primes)


def test_factorize_large_semiprime():
    p, q = 1_000_000_007, 998_244_353
    assert factorize(p * q * q) == [(q, 2), (p, 1)]


def test_primality_small_range():
    sieve = [True] * 5000
    sieve[0] = sieve[1] = False
    for i in range(2, 5000):
        if sieve[i]:
            for j in range(i * i, 5000, i):
                sieve[j] = False
    assert [n for n in range(5000) if is_probable_prime(n)] == [n for n in range(5000) if sieve[n]]


def _sqf_reference(n):
    s = 1
    for p, e in factorize(n):
        if e % 2:
            s *= p
    return s


def test_squarefree_examples():
    assert squarefree_part(1) == 1
    assert squarefree_part(12) == 3
    assert squarefree_part(360) == 10
    for bad in (0, -4):
        with pytest.raises(ValueError):
            squarefree_part(bad)


@settings(max_examples=1000, deadline=None)
@given(st.integers(1, 4000**3 + 5000))
def test_squarefree_fast_path_matches_factorization(n):
    assert squarefree_part(n) == _sqf_reference(n)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 10**6), st.integers(1, 1000))
def test_squarefree_ignores_square_factors(n, m):
    assert squarefree_part(n * m * m) == squarefree_part(n)


@pytest.mark.parametrize("n", [3989 * 3989 * 3, 3989 * 3967, 3989**2, 4001 * 4003, 2 * 4001**2, 4003**3])
def test_squarefree_near_the_trial_bound(n):
    assert squarefree_part(n) == _sqf_reference(n)
