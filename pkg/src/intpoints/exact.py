"""Exact integer primitives: determinants, integer square roots, factorization."""

from __future__ import annotations

import math
import random
from functools import lru_cache

__all__ = [
    "det_exact",
    "isqrt",
    "factorize",
    "squarefree_part",
    "is_probable_prime",
]


def det_exact(matrix) -> int:
    """Determinant of a square integer matrix by fraction-free (Bareiss) elimination.

    Every division performed during elimination is exact; a nonzero remainder
    means the input was not an integer matrix and raises ``ArithmeticError``.
    """
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0 or any(len(row) != n for row in a):
        raise ValueError("det_exact needs a non-empty square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                q, r = divmod(ri[j] * akk - aik * rk[j], prev)
                if r:
                    raise ArithmeticError("inexact division in Bareiss elimination")
                ri[j] = q
        prev = akk
    return sign * a[n - 1][n - 1]


def isqrt(n: int) -> tuple[int, bool]:
    """Return ``(floor(sqrt(n)), n is a perfect square)``."""
    if n < 0:
        raise ValueError("isqrt of a negative number")
    r = math.isqrt(n)
    return r, r * r == n


# -- primality / factorization ------------------------------------------------

_TRIAL_BOUND = 1000


@lru_cache(maxsize=None)
def _primes_upto(bound: int) -> tuple[int, ...]:
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


# Deterministic Miller-Rabin witnesses for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, rng: random.Random) -> int:
    """Return a nontrivial factor of the odd composite ``n``."""
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of ``n >= 1`` as ``[(prime, exponent), ...]`` with increasing primes.

    Trial division handles small primes; the remaining cofactor is split with
    Brent's variant of Pollard rho (seeded, so runs are reproducible).
    """
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    counts: dict[int, int] = {}
    for p in _primes_upto(_TRIAL_BOUND):
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            counts[p] = e
    if n > 1:
        rng = random.Random(n)
        stack = [n]
        while stack:
            f = stack.pop()
            if f == 1:
                continue
            if f < _TRIAL_BOUND * _TRIAL_BOUND or is_probable_prime(f):
                counts[f] = counts.get(f, 0) + 1
                continue
            r, exact = isqrt(f)
            if exact:
                stack += [r, r]
                continue
            d = _pollard_brent(f, rng)
            stack += [d, f // d]
    return sorted(counts.items())


# Primorial for the squarefree fast path; numbers up to its bound cubed need no
# further splitting (see squarefree_part).
_SF_BOUND = 4000
_SF_PRIMORIAL = math.prod(_primes_upto(_SF_BOUND))
_SF_LIMIT = _SF_BOUND**3


def squarefree_part(n: int) -> int:
    """The squarefree ``s`` with ``n == s * t**2``."""
    if n < 1:
        raise ValueError("squarefree_part needs a positive integer")
    if n > _SF_LIMIT:
        s = 1
        for p, e in factorize(n):
            if e & 1:
                s *= p
        return s
    # Peel the small primes off by repeated gcds: primes dividing n exactly
    # e times leave g_e / g_{e+1}; odd e contribute to the squarefree part.
    g = math.gcd(n, _SF_PRIMORIAL)
    s = 1
    odd = True
    while g > 1:
        n //= g
        g_next = math.gcd(n, g)
        if odd:
            s *= g // g_next
        odd = not odd
        g = g_next
    # The cofactor has no prime below the bound and n <= bound**3, so it is
    # 1, p, p*q or p**2.
    r = math.isqrt(n)
    return s if r * r == n else s * n
