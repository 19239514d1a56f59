"""Gluing two point sets along n-2 shared points.

``x`` holds points ``0..n-2`` and ``y`` holds ``0..n-3`` plus one more point;
together they fix every distance of the n-point union except ``d[n-2][n-1]``.
Writing ``t`` for its square, the Cayley-Menger determinant of the union is a
quadratic in ``t``.

For the search itself we work over an affine basis ``Q`` of the shared points.
With ``K(t)`` the Cayley-Menger determinant whose rows are ``Q + [A]`` and
whose columns are ``Q + [B]``, Sylvester's determinant identity gives

    CMD(Q+A+B) * CMD(Q) = CMD(Q+A) * CMD(Q+B) - K(t)**2,
    K(t) = CMD(Q) * t - w_A . v_B,

where ``v_P = (1, d(Q_0, P)**2, ...)`` and ``w_P = adj(CM(Q)) v_P``. So every
completion reduces to a few integer dot products against one adjugate that is
shared by the whole group of candidates.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import isqrt
from operator import mul

from .exact import det_exact
from .metric import DistanceMatrix

__all__ = [
    "Mode",
    "PrefixMismatch",
    "DegenerateFamily",
    "QuadraticPoly",
    "Frame",
    "BaseFrame",
    "merge_frame",
    "cmd_polynomial",
    "solve_completion",
    "combine",
]


class Mode(Enum):
    SIMPLEX = "simplex"  # strict: the new simplex must have positive volume
    EQUALITY = "equality"  # the union must be flat in one more dimension
    RANGE = "range"  # non-strict: flat completions allowed


class PrefixMismatch(ValueError):
    """The two point sets do not share their first n-2 points."""


class DegenerateFamily(ArithmeticError):
    """The completion polynomial vanishes identically."""


@dataclass(frozen=True)
class QuadraticPoly:
    a: int
    b: int
    c: int

    def __call__(self, x: int) -> int:
        return (self.a * x + self.b) * x + self.c

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0


@dataclass(frozen=True)
class Frame:
    """n-point distance data with one unknown entry at ``(n-2, n-1)``."""

    n: int
    rows: tuple[tuple[int | None, ...], ...]

    def completed(self, d: int) -> DistanceMatrix:
        rows = [list(r) for r in self.rows]
        rows[self.n - 2][self.n - 1] = rows[self.n - 1][self.n - 2] = d
        return DistanceMatrix(rows)


def merge_frame(D1: DistanceMatrix, D2: DistanceMatrix) -> Frame:
    if D1.n != D2.n or D1.n < 2:
        raise PrefixMismatch("both point sets need the same number (>= 2) of points")
    if D1.truncate() != D2.truncate():
        raise PrefixMismatch("point sets differ on their first n-2 points")
    k = D1.n
    n = k + 1
    rows = [list(r) + [None] for r in D1.rows]
    rows.append([None] * n)
    last = D2.rows[k - 1]
    for i in range(k - 1):
        rows[i][n - 1] = rows[n - 1][i] = last[i]
    rows[n - 1][n - 1] = 0
    return Frame(n, tuple(tuple(r) for r in rows))


def _frame_cmd(frame: Frame, t: int) -> int:
    n = frame.n
    m = [[0] + [1] * n]
    for i, row in enumerate(frame.rows):
        out = [1]
        for j, v in enumerate(row):
            out.append(t if v is None else v * v)
        m.append(out)
    return det_exact(m)


def cmd_polynomial(frame: Frame) -> QuadraticPoly:
    """Coefficients of ``CMD(t)`` by exact interpolation at ``t = 0, 1, 2``."""
    p0, p1, p2 = (_frame_cmd(frame, t) for t in (0, 1, 2))
    two_a = p2 - 2 * p1 + p0
    if two_a % 2:
        raise ArithmeticError("non-integral leading coefficient")
    a = two_a // 2
    return QuadraticPoly(a, p1 - p0 - a, p0)


def _adjugate(m: list[list[int]]) -> list[list[int]]:
    n = len(m)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1 :] for k, row in enumerate(m) if k != i]
            cof = det_exact(minor)
            adj[j][i] = -cof if (i + j) & 1 else cof
    return adj


class BaseFrame:
    """Cayley-Menger data of an affinely independent base ``Q``.

    ``sq`` holds squared distances among the base points.
    """

    __slots__ = ("q", "cmd", "adj", "sign")

    def __init__(self, sq):
        q = len(sq)
        border = [[0] + [1] * q] + [[1] + list(row) for row in sq]
        self.q = q
        self.cmd = det_exact(border)
        if self.cmd == 0:
            raise ValueError("base points are affinely dependent")
        self.adj = _adjugate(border)
        # sign turning CMD(Q + P) into the nonnegative simplex measure
        self.sign = 1 if q & 1 else -1

    def lift(self, v):
        """``(w, sigma)`` for the point with vector ``v``; ``sigma >= 0`` iff Q + P is real."""
        w = [sum(map(mul, row, v)) for row in self.adj]
        cmd_qp = -sum(map(mul, v, w))
        return w, self.sign * cmd_qp


def solve_completion(k0: int, x: int, cmd_q: int, mode: Mode, fmax: int) -> list[int]:
    """Integer distances ``1 <= f <= fmax`` with ``K(f**2) = k0 + cmd_q * f**2`` feasible.

    ``x`` is the product of the two parent simplex measures. SIMPLEX asks for
    ``K**2 < x``, RANGE for ``K**2 <= x`` and EQUALITY for ``K**2 == x``.
    Returned in decreasing order.
    """
    if x < 0 or fmax < 1:
        return []
    r = isqrt(x)
    exact = r * r == x
    if mode is Mode.EQUALITY:
        if not exact:
            return []
        found = set()
        for u in (r - k0, -r - k0):
            t, rem = divmod(u, cmd_q)
            if rem or t < 1:
                continue
            f = isqrt(t)
            if f * f == t and f <= fmax:
                found.add(f)
        return sorted(found, reverse=True)
    if mode is Mode.SIMPLEX and exact:
        r -= 1
        if r < 0:
            return []
    lo, hi = -r - k0, r - k0
    if cmd_q > 0:
        t_lo, t_hi = -(-lo // cmd_q), hi // cmd_q
    else:
        t_lo, t_hi = -(-hi // cmd_q), lo // cmd_q
    t_lo = max(t_lo, 1)
    t_hi = min(t_hi, fmax * fmax)
    if t_lo > t_hi:
        return []
    f_lo = isqrt(t_lo - 1) + 1
    f_hi = isqrt(t_hi)
    return list(range(f_hi, f_lo - 1, -1))


def affine_basis(sq, candidates) -> list[int]:
    """Greedy affine basis among ``candidates`` (in order) from squared distances."""
    basis: list[int] = []
    for p in candidates:
        trial = basis + [p]
        border = [[0] + [1] * len(trial)] + [[1] + [sq[i][j] for j in trial] for i in trial]
        if det_exact(border) != 0:
            basis = trial
    return basis


def combine(D1: DistanceMatrix, D2: DistanceMatrix, m: int, delta: int, mode: Mode) -> list[DistanceMatrix]:
    """All integral completions of the union of ``D1`` and ``D2`` with entries at most ``delta``.

    SIMPLEX keeps completions whose n points span a nondegenerate simplex;
    RANGE also admits the flat limit cases, for shared points spanning fewer
    than m dimensions; EQUALITY keeps the (at most two) completions that do
    not raise the dimension.
    """
    frame = merge_frame(D1, D2)
    n = frame.n
    if mode is Mode.SIMPLEX and n > m + 1:
        raise ValueError(f"{n} points cannot form a simplex in dimension {m}")
    sq = [[v * v for v in row] for row in D1.rows]
    shared = list(range(n - 2))
    basis = affine_basis(sq, shared)
    if mode is Mode.SIMPLEX and len(basis) < len(shared):
        return []
    if mode is Mode.RANGE and len(basis) + 1 > m:
        raise ValueError("the shared points already span the space; use EQUALITY")
    base = BaseFrame([[sq[i][j] for j in basis] for i in basis])
    a, b = n - 2, n - 1
    va = [1] + [sq[i][a] for i in basis]
    vb = [1] + [frame.rows[i][b] ** 2 for i in basis]
    wa, sa = base.lift(va)
    _, sb = base.lift(vb)
    if sa < 0 or sb < 0:
        return []
    k0 = -sum(p * q for p, q in zip(wa, vb))
    fs = solve_completion(k0, sa * sb, base.cmd, mode, delta)
    return [frame.completed(f) for f in fs]
