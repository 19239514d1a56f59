"""Word order on distance matrices: canonical and semi-canonical labelings.

A labeling is canonical when its word is lexicographically maximal among all
relabelings. All tests here run a branch-and-bound search over partial
labelings; a partial labeling fixes a prefix of the word, so a branch dies as
soon as that prefix falls below the target.
"""

from __future__ import annotations

from .metric import DistanceMatrix

__all__ = [
    "word",
    "compare",
    "is_canonical",
    "is_semi_canonical",
    "canonize",
    "beats",
]


def word(D: DistanceMatrix) -> tuple[int, ...]:
    if D.n < 2:
        raise ValueError("a word needs at least two points")
    return D.word


def compare(w1, w2) -> int:
    """-1, 0 or 1 as ``w1`` is lexicographically below, equal to or above ``w2``."""
    if len(w1) != len(w2):
        raise ValueError(f"word lengths differ: {len(w1)} vs {len(w2)}")
    for a, b in zip(w1, w2):
        if a != b:
            return 1 if a > b else -1
    return 0


def _extend(rows, pts, target, prefix, pos) -> bool:
    j = len(prefix)
    if j == len(pts):
        return False
    for p in pts:
        if p in prefix:
            continue
        row = rows[p]
        i = pos
        for q in prefix:
            v = row[q]
            w = target[i]
            if v != w:
                break
            i += 1
        else:
            prefix.append(p)
            found = _extend(rows, pts, target, prefix, pos + j)
            prefix.pop()
            if found:
                return True
            continue
        if v > w:
            return True
    return False


def beats(rows, pts, target) -> bool:
    """Does some ordering of ``pts`` read a word strictly greater than ``target``?

    ``target`` must have length ``len(pts) * (len(pts) - 1) / 2``.
    """
    if len(pts) < 2:
        return False
    top = target[0]
    for a in pts:
        ra = rows[a]
        for b in pts:
            v = ra[b]
            if v < top or a == b:
                continue
            if v > top:
                return True
            if _extend(rows, pts, target, [a, b], 1):
                return True
    return False


def is_canonical(D: DistanceMatrix) -> bool:
    if D.n < 2:
        return True
    return not beats(D.rows, list(range(D.n)), D.word)


def is_semi_canonical(D: DistanceMatrix) -> bool:
    """Is the word of the first n-1 points maximal over all (n-1)-point relabelings?"""
    n = D.n
    if n <= 2:
        return True
    target = D.word[: (n - 1) * (n - 2) // 2]
    rows = D.rows
    everything = list(range(n))
    return not any(beats(rows, everything[:k] + everything[k + 1 :], target) for k in range(n))


def canonize(D: DistanceMatrix) -> DistanceMatrix:
    """Relabel ``D`` so its word is maximal."""
    n = D.n
    if n < 2:
        return D
    rows = D.rows
    best: list = [None, None]  # word, labeling

    def search(prefix: list[int], partial: list[int]) -> None:
        j = len(prefix)
        if j == n:
            if best[0] is None or partial > best[0]:
                best[0] = list(partial)
                best[1] = list(prefix)
            return
        for p in range(n):
            if p in prefix:
                continue
            col = [rows[p][q] for q in prefix]
            if best[0] is not None:
                size = len(partial) + j
                if partial + col < best[0][:size]:
                    continue
            prefix.append(p)
            partial.extend(col)
            search(prefix, partial)
            del partial[len(partial) - j :]
            prefix.pop()

    # a word-maximal labeling starts on a diametral pair
    top = D.diameter
    for a in range(n):
        for b in range(n):
            if a != b and rows[a][b] == top:
                search([a, b], [top])
    return D.relabel(best[1])
