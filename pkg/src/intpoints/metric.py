"""Distance matrices and the Cayley-Menger machinery built on them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from itertools import combinations
from math import factorial, isqrt

from .exact import det_exact, squarefree_part

__all__ = [
    "DistanceMatrix",
    "DegenerateSimplex",
    "DegeneratePrefix",
    "CoordinateRepresentation",
    "cayley_menger_matrix",
    "cmd",
    "volume_squared",
    "characteristic",
    "point_set_characteristic",
    "simplex_characteristics",
    "rational_squarefree",
    "is_realizable",
    "top_level_realizable",
    "on_common_sphere",
    "is_semi_general_position",
    "is_general_position",
    "affine_dimension",
    "coordinates",
]


class DegenerateSimplex(ValueError):
    """The simplex has zero volume, so it has no characteristic."""


class DegeneratePrefix(ValueError):
    """Some leading simplex of the point set is flat."""


@total_ordering
class DistanceMatrix:
    """Symmetric matrix of pairwise integer distances, ordered by its word.

    The word reads the strict upper triangle column by column:
    ``(d01, d02, d12, d03, d13, d23, ...)``.
    """

    __slots__ = ("n", "word", "_rows")

    def __init__(self, rows):
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError("distance matrix must be square")
            if row[i] != 0:
                raise ValueError("diagonal entries must be zero")
            for j in range(i):
                if row[j] != rows[j][i]:
                    raise ValueError(f"matrix not symmetric at ({j}, {i})")
                if row[j] < 1:
                    raise ValueError("off-diagonal distances must be positive")
        self.n = n
        self.word = tuple(rows[i][j] for j in range(1, n) for i in range(j))
        self._rows = rows

    @classmethod
    def from_word(cls, word, n: int | None = None) -> "DistanceMatrix":
        word = tuple(int(v) for v in word)
        if n is None:
            n = (1 + isqrt(1 + 8 * len(word))) // 2
        if n * (n - 1) // 2 != len(word):
            raise ValueError(f"word of length {len(word)} does not fit {n} points")
        if any(v < 1 for v in word):
            raise ValueError("off-diagonal distances must be positive")
        return cls._trusted(n, word)

    @classmethod
    def _trusted(cls, n: int, word: tuple, rows=None) -> "DistanceMatrix":
        obj = cls.__new__(cls)
        obj.n = n
        obj.word = word
        obj._rows = rows
        return obj

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        if self._rows is None:
            n = self.n
            d = [[0] * n for _ in range(n)]
            it = iter(self.word)
            for j in range(1, n):
                for i in range(j):
                    d[i][j] = d[j][i] = next(it)
            self._rows = tuple(tuple(r) for r in d)
        return self._rows

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.rows[i][j]

    def __len__(self) -> int:
        return self.n

    @property
    def diameter(self) -> int:
        return max(self.word, default=0)

    def sub(self, indices) -> "DistanceMatrix":
        """The point set restricted to ``indices`` (in that order)."""
        rows = self.rows
        idx = list(indices)
        if len(set(idx)) != len(idx) or any(not 0 <= i < self.n for i in idx):
            raise IndexError(f"invalid point indices {idx} for {self.n} points")
        sub_rows = tuple(tuple(rows[i][j] for j in idx) for i in idx)
        k = len(idx)
        return DistanceMatrix._trusted(
            k, tuple(sub_rows[i][j] for j in range(1, k) for i in range(j)), sub_rows
        )

    def relabel(self, perm) -> "DistanceMatrix":
        """Matrix ``(d[perm[i]][perm[j]])``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("not a permutation")
        return self.sub(perm)

    def truncate(self) -> "DistanceMatrix":
        """The first ``n - 1`` points."""
        return DistanceMatrix._trusted(self.n - 1, self.word[: (self.n - 1) * (self.n - 2) // 2])

    def delete(self, k: int) -> "DistanceMatrix":
        return self.sub([i for i in range(self.n) if i != k])

    def __eq__(self, other):
        if not isinstance(other, DistanceMatrix):
            return NotImplemented
        return self.n == other.n and self.word == other.word

    def __lt__(self, other):
        if not isinstance(other, DistanceMatrix):
            return NotImplemented
        return (self.n, self.word) < (other.n, other.word)

    def __hash__(self):
        return hash(self.word)

    def __repr__(self):
        return f"DistanceMatrix.from_word({self.word!r})"


# -- Cayley-Menger determinants ---------------------------------------------


def cayley_menger_matrix(D: DistanceMatrix, subset=None) -> list[list[int]]:
    idx = range(D.n) if subset is None else list(subset)
    rows = D.rows
    out = [[0] + [1] * len(idx)]
    for i in idx:
        out.append([1] + [rows[i][j] ** 2 for j in idx])
    return out


def _check_subset(D: DistanceMatrix, subset) -> list[int]:
    idx = list(range(D.n)) if subset is None else list(subset)
    if not idx:
        raise IndexError("empty subset")
    if len(set(idx)) != len(idx) or any(not 0 <= i < D.n for i in idx):
        raise IndexError(f"invalid point indices {idx} for {D.n} points")
    return idx


def cmd(D: DistanceMatrix, subset=None) -> int:
    """Cayley-Menger determinant of the points in ``subset`` (default: all)."""
    idx = _check_subset(D, subset)
    return det_exact(cayley_menger_matrix(D, idx))


def volume_squared(D: DistanceMatrix, subset=None, dim: int | None = None) -> Fraction:
    idx = _check_subset(D, subset)
    if dim is None:
        dim = len(idx) - 1
    if len(idx) != dim + 1:
        raise ValueError(f"a {dim}-simplex needs {dim + 1} points, got {len(idx)}")
    det = cmd(D, idx)
    return Fraction((-1) ** (dim + 1) * det, 2**dim * factorial(dim) ** 2)


def rational_squarefree(x: Fraction) -> int:
    """Squarefree ``k`` with ``x = q**2 * k`` for rational ``q``."""
    if x <= 0:
        raise ValueError("squarefree part needs a positive rational")
    return squarefree_part(x.numerator * x.denominator)


def characteristic(D: DistanceMatrix, subset=None, m: int | None = None) -> int:
    """Squarefree ``k`` with ``V_m = q * sqrt(k)`` for the simplex on ``subset``."""
    v2 = volume_squared(D, subset, m)
    if v2 == 0:
        raise DegenerateSimplex("simplex has zero volume")
    return rational_squarefree(v2)


def point_set_characteristic(D: DistanceMatrix, m: int) -> int | None:
    """Characteristic of the first nondegenerate m-simplex of ``D`` (None if flat)."""
    for subset in combinations(range(D.n), m + 1):
        v2 = volume_squared(D, subset, m)
        if v2:
            return rational_squarefree(v2)
    return None


def simplex_characteristics(D: DistanceMatrix, m: int) -> set[int]:
    """Characteristics of all nondegenerate m-simplices spanned by points of ``D``."""
    out = set()
    for subset in combinations(range(D.n), m + 1):
        v2 = volume_squared(D, subset, m)
        if v2:
            out.add(rational_squarefree(v2))
    return out


def affine_dimension(D: DistanceMatrix) -> int:
    """Dimension of the affine hull, assuming ``D`` is Euclidean."""
    basis = [0]
    for p in range(1, D.n):
        if cmd(D, basis + [p]) != 0:
            basis.append(p)
    return len(basis) - 1


# -- realizability and position ---------------------------------------------


def is_realizable(D: DistanceMatrix, m: int) -> bool:
    """Full Menger test for embeddability in m-dimensional Euclidean space."""
    for r in range(1, D.n + 1):
        sign = -1 if r % 2 else 1
        for subset in combinations(range(D.n), r):
            value = sign * cmd(D, subset)
            if r <= m + 1:
                if value < 0:
                    return False
            elif value != 0:
                return False
    return True


def top_level_realizable(D: DistanceMatrix, m: int) -> bool:
    """Sign/zero condition on the whole set only; parents are assumed realizable."""
    value = (-1) ** D.n * cmd(D)
    return value >= 0 if D.n <= m + 1 else value == 0


def on_common_sphere(D: DistanceMatrix, m: int) -> bool:
    """For m+2 points with no m+1 on a hyperplane: do they share a sphere?"""
    if D.n != m + 2:
        raise ValueError(f"need exactly {m + 2} points, got {D.n}")
    return det_exact([[v * v for v in row] for row in D.rows]) == 0


def is_semi_general_position(D: DistanceMatrix, m: int) -> bool:
    """No m+1 points lie on an (m-1)-dimensional hyperplane."""
    return all(cmd(D, s) != 0 for s in combinations(range(D.n), m + 1))


def is_general_position(D: DistanceMatrix, m: int) -> bool:
    if not is_semi_general_position(D, m):
        return False
    return not any(on_common_sphere(D.sub(s), m) for s in combinations(range(D.n), m + 2))


# -- coordinates --------------------------------------------------------------


@dataclass(frozen=True)
class CoordinateRepresentation:
    """Point ``i`` has coordinate ``j`` equal to ``q[i][j] * sqrt(k[j])``."""

    m: int
    k: tuple[int, ...]
    q: tuple[tuple[Fraction, ...], ...]

    def squared_distance(self, i: int, j: int) -> Fraction:
        return sum(
            ((a - b) ** 2 * kh for a, b, kh in zip(self.q[i], self.q[j], self.k)),
            Fraction(0),
        )

    def characteristic(self) -> int:
        prod = 1
        for kh in self.k:
            prod *= kh
        return squarefree_part(prod)


def coordinates(D: DistanceMatrix, m: int) -> CoordinateRepresentation:
    """Embed ``D`` with the triangular coordinate scheme over ``Q(sqrt(k_1), ...)``.

    The first m+1 points must span an m-simplex.
    """
    if D.n < m + 1:
        raise ValueError(f"need at least {m + 1} points for an {m}-dimensional frame")
    sq = [[v * v for v in row] for row in D.rows]
    k: list[int] = []
    q: list[list[Fraction]] = [[Fraction(0)] * m]
    for i in range(1, D.n):
        qi = [Fraction(0)] * m
        top = min(i, m + 1)
        for j in range(1, top):
            acc = Fraction(sq[0][i] - sq[j][i] + sq[0][j])
            for h in range(j - 1):
                acc -= 2 * q[j][h] * qi[h] * k[h]
            qi[j - 1] = acc / (2 * q[j][j - 1] * k[j - 1])
        if i <= m:
            rest = sq[0][i] - sum((qi[h] ** 2 * k[h] for h in range(i - 1)), Fraction(0))
            if rest <= 0:
                raise DegeneratePrefix(f"points 0..{i} are affinely dependent")
            ki = rational_squarefree(rest)
            ratio = rest / ki
            num = isqrt(ratio.numerator)
            den = isqrt(ratio.denominator)
            if num * num != ratio.numerator or den * den != ratio.denominator:
                raise ArithmeticError("squarefree split failed")
            k.append(ki)
            qi[i - 1] = Fraction(num, den)
        q.append(qi)
    return CoordinateRepresentation(m=m, k=tuple(k), q=tuple(tuple(r) for r in q))
