"""Orderly generation of integral point sets.

Semi-canonical sets are generated in *groups*: all sets in a group share their
first N-1 points (the group prefix) and differ in the last one. Gluing two
members ``x`` (canonical) and ``y`` of a group yields the (N+1)-point children
of ``x``; those children form the next group. Because a semi-canonical set
always puts a diametral pair first, every set in a group has the same diameter,
so each diameter can be enumerated on its own.

Pair counting follows the convention behind the published combine-call
statistics: ``x`` runs over every semi-canonical member and ``y`` over the
members ``y <= x`` (restricted to equal characteristic when pruning). Pairs
with a non-canonical ``x`` are counted but skipped, since none of their
completions can be semi-canonical.
"""

from __future__ import annotations

import logging
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from operator import mul

from .canonical import beats
from .combiner import BaseFrame, Mode, affine_basis, solve_completion
from .exact import det_exact, squarefree_part
from .metric import DistanceMatrix

__all__ = [
    "PositionMode",
    "CandidateList",
    "StatsRecord",
    "Tally",
    "base_lists",
    "lift_simplices",
    "extend_pointsets",
    "filter_general_position",
    "extend_with_degenerate",
    "enumerate_lists",
    "run_statistics",
    "sweep_diameter",
    "worker_count",
]

log = logging.getLogger(__name__)


class PositionMode(str, Enum):
    ANY = "any"
    SEMI_GENERAL = "semi-general"
    GENERAL = "general"


@dataclass
class CandidateList:
    """Canonical (``kind='c'``) or semi-canonical (``'s'``) n-point sets of diameter <= delta."""

    m: int
    n: int
    delta: int
    kind: str
    items: list[DistanceMatrix] = field(default_factory=list)

    def __post_init__(self):
        if self.kind not in ("c", "s"):
            raise ValueError(f"kind must be 'c' or 's', not {self.kind!r}")

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)


@dataclass
class StatsRecord:
    m: int
    delta: int
    psi: int
    psi_hat: int | None
    alpha_tilde: int


@dataclass
class Tally:
    """Per-level counters and best canonical words from one enumeration run.

    The ``*_strict`` fields count the sets that also meet the stronger
    condition of the run: general position in semi-general runs, spanning
    all m dimensions in unrestricted runs.
    """

    semi: Counter = field(default_factory=Counter)
    canon: Counter = field(default_factory=Counter)
    canon_strict: Counter = field(default_factory=Counter)
    pairs: Counter = field(default_factory=Counter)
    next_pruned: int = 0
    next_unpruned: int = 0
    best: dict = field(default_factory=dict)
    best_strict: dict = field(default_factory=dict)

    def merge(self, other: "Tally") -> None:
        self.semi.update(other.semi)
        self.canon.update(other.canon)
        self.canon_strict.update(other.canon_strict)
        self.pairs.update(other.pairs)
        self.next_pruned += other.next_pruned
        self.next_unpruned += other.next_unpruned
        for mine, theirs in ((self.best, other.best), (self.best_strict, other.best_strict)):
            for n, w in theirs.items():
                if n not in mine or w > mine[n]:
                    mine[n] = w

    def combine_calls(self) -> int:
        return sum(self.pairs.values())


def worker_count() -> int:
    """Worker processes allowed by ``IPS_THREADS`` (unset or 0 means all cores)."""
    raw = os.environ.get("IPS_THREADS", "").strip()
    limit = int(raw) if raw else 0
    cores = os.cpu_count() or 1
    return cores if limit <= 0 else min(limit, cores)


# -- group machinery ---------------------------------------------------------


class _Group:
    """Sets sharing their first N-1 points, in decreasing word order."""

    __slots__ = (
        "items", "canon", "strict", "N", "m", "position", "base", "mode",
        "vs", "ws", "sigmas", "keys", "buckets", "bucket_pos", "flat", "q",
    )

    def __init__(self, items, canon, strict, m, position, bucketed):
        self.items = items
        self.canon = canon
        self.strict = strict
        self.m = m
        self.position = position
        N = self.N = items[0].n
        rows = items[0].rows
        shared = range(N - 1)
        if position is PositionMode.ANY:
            sq = [[v * v for v in r] for r in rows]
            basis = affine_basis(sq, shared)
        else:
            basis = list(range(min(N - 1, m + 1)))
        q = self.q = len(basis)
        self.base = BaseFrame([[rows[i][j] ** 2 for j in basis] for i in basis])
        if q + 1 <= m:
            self.mode = Mode.RANGE if position is PositionMode.ANY else Mode.SIMPLEX
        else:
            self.mode = Mode.EQUALITY
        lift = self.base.lift
        vs, ws, sigmas = [], [], []
        for it in items:
            last = it.rows[N - 1]
            v = [1] + [last[i] * last[i] for i in basis]
            w, s = lift(v)
            vs.append(v)
            ws.append(w)
            sigmas.append(s)
        self.vs, self.ws, self.sigmas = vs, ws, sigmas
        if position is PositionMode.ANY:
            # affine dimension of each member: q - 1 for the shared points, plus
            # one when the last point leaves their hull
            self.strict = [q - 1 + (s != 0) for s in sigmas]
        self.keys = None
        # Two full m-simplices glued along a hyperplane give an integral
        # distance only when their characteristics agree.
        if bucketed and q == m:
            odd = m & 1
            self._bucket([squarefree_part(s << odd) if s > 0 else None for s in sigmas])

    def restrict(self, keep) -> None:
        """Drop every member not listed in ``keep`` (increasing indices)."""
        for name in ("items", "canon", "strict", "vs", "ws", "sigmas"):
            old = getattr(self, name)
            setattr(self, name, [old[k] for k in keep])
        if self.keys is not None:
            keys = [self.keys[k] for k in keep]
            self.keys = None
            self._bucket(keys)

    def _bucket(self, keys) -> None:
        buckets: dict = {}
        pos = []
        flat = []
        for idx, k in enumerate(keys):
            if k is None:
                flat.append(idx)
                pos.append(-1)
            else:
                b = buckets.setdefault(k, [])
                pos.append(len(b))
                b.append(idx)
        self.keys, self.buckets, self.bucket_pos, self.flat = keys, buckets, pos, flat

    def partners(self, i: int):
        """Indices ``j >= i`` paired with member ``i``."""
        if self.keys is None or self.keys[i] is None:
            return range(i, len(self.items))
        own = self.buckets[self.keys[i]][self.bucket_pos[i]:]
        if not self.flat:
            return own
        return sorted(own + [j for j in self.flat if j >= i])

    def pair_counts(self) -> tuple[int, int]:
        """(pruned, unpruned) number of pairs this group would feed to combine."""
        s = len(self.items)
        unpruned = s * (s + 1) // 2
        if self.keys is None:
            return unpruned, unpruned
        pruned = sum(len(self.partners(i)) for i in range(s)) if self.flat else sum(
            len(b) * (len(b) + 1) // 2 for b in self.buckets.values()
        )
        return pruned, unpruned

    def children(self, i: int, partners, fmax: int, final: bool, track_general: bool, lazy: bool = False):
        """Semi-canonical (canonical only, if ``final``) children of canonical member ``i``.

        With ``lazy`` the order tests are skipped and every completion is
        returned with canonicity flag None; see ``_settle``.
        """
        x = self.items[i]
        N = self.N
        n = N + 1
        m = self.m
        xw = x.word
        xr = x.rows
        fcap = min(fmax, xw[0])
        wx = self.ws[i]
        sx = self.sigmas[i]
        vs, sigmas, items = self.vs, self.sigmas, self.items
        cmd_q = self.base.cmd
        mode = self.mode
        allpts = list(range(n))
        drop = [allpts[:k] + allpts[k + 1 :] for k in range(N)]
        check_position = self.position is not PositionMode.ANY and n >= m + 2
        want_general = n >= m + 2 and (self.position is PositionMode.GENERAL or track_general)
        unrestricted = self.position is PositionMode.ANY
        dims, q = self.strict, self.q
        kids, kcanon, kstrict = [], [], []
        for j in partners:
            vy = vs[j]
            k0 = -sum(map(mul, wx, vy))
            fs = solve_completion(k0, sx * sigmas[j], cmd_q, mode, fcap)
            if not fs:
                continue
            y = items[j]
            base_col = y.rows[N - 1][: N - 1]
            for f in fs:
                col = base_col + (f,)
                zrows = tuple(xr[r] + (col[r],) for r in range(N)) + (col + (0,),)
                zw = xw + col
                if lazy:
                    is_canon = None
                elif final:
                    if beats(zrows, allpts, zw):
                        continue
                    is_canon = True
                else:
                    # a canonical set is semi-canonical as well
                    is_canon = not beats(zrows, allpts, zw)
                    if not is_canon and any(beats(zrows, pts, xw) for pts in drop):
                        continue
                if check_position and not _new_subsets_independent(zrows, m):
                    continue
                gen = True
                if unrestricted:
                    # the child spans one more dimension than P exactly when
                    # both parents leave P's hull and K(f)^2 differs from X
                    dx, dy = dims[i], dims[j]
                    if dx == m or dy == m:
                        gen = True
                    else:
                        k = k0 + cmd_q * f * f
                        gen = dx == dy == q == m - 1 and k * k != sx * sigmas[j]
                elif want_general:
                    gen = self.strict[i] and self.strict[j] and not _new_subsets_cospherical(zrows, m)
                    if self.position is PositionMode.GENERAL and not gen:
                        continue
                kids.append(DistanceMatrix._trusted(n, zw, zrows))
                kcanon.append(is_canon)
                kstrict.append(gen)
        return kids, kcanon, kstrict


def _new_subsets_independent(rows, m: int) -> bool:
    """Every (m+1)-subset through the two newest points spans an m-simplex."""
    n = len(rows)
    a, b = n - 2, n - 1
    for rest in combinations(range(n - 2), m - 1):
        idx = rest + (a, b)
        mat = [[0] + [1] * (m + 1)] + [[1] + [rows[i][j] ** 2 for j in idx] for i in idx]
        if det_exact(mat) == 0:
            return False
    return True


def _new_subsets_cospherical(rows, m: int) -> bool:
    """Some (m+2)-subset through the two newest points lies on a sphere."""
    n = len(rows)
    a, b = n - 2, n - 1
    for rest in combinations(range(n - 2), m):
        idx = rest + (a, b)
        if det_exact([[rows[i][j] ** 2 for j in idx] for i in idx]) == 0:
            return True
    return False


# -- depth-first sweep of one diameter ---------------------------------------


@dataclass(frozen=True)
class _RunSpec:
    m: int
    position: PositionMode
    prune: bool
    target: int
    track_general: bool
    count_next: bool
    lazy: bool = False


def _record(tally: Tally, n: int, items, canon, gen) -> None:
    tally.semi[n] += len(items)
    for it, c, g in zip(items, canon, gen):
        if not c:
            continue
        tally.canon[n] += 1
        if n not in tally.best or it.word > tally.best[n]:
            tally.best[n] = it.word
        if g:
            tally.canon_strict[n] += 1
            if n not in tally.best_strict or it.word > tally.best_strict[n]:
                tally.best_strict[n] = it.word


def _descend(items, canon, gen, spec: _RunSpec, fmax: int, tally: Tally, only=None) -> None:
    group = _Group(items, canon, gen, spec.m, spec.position, spec.prune or spec.count_next)
    _descend_group(group, spec, fmax, tally, only)


def _descend_group(group: "_Group", spec: _RunSpec, fmax: int, tally: Tally, only=None) -> None:
    N = group.N
    items, canon = group.items, group.canon
    if N == spec.target:
        if spec.count_next:
            pruned, unpruned = group.pair_counts()
            tally.next_pruned += pruned
            tally.next_unpruned += unpruned
        return
    final = N + 1 == spec.target and not spec.count_next
    lazy = (
        spec.lazy and N + 1 == spec.m + 1 and N + 1 < spec.target and spec.prune
        and not spec.count_next and spec.position is not PositionMode.ANY
    )
    indices = range(len(items)) if only is None else only
    for i in indices:
        partners = group.partners(i) if spec.prune else range(i, len(items))
        tally.pairs[N + 1] += len(partners)
        if not canon[i]:
            continue
        kids, kcanon, kstrict = group.children(i, partners, fmax, final, spec.track_general, lazy)
        if not kids:
            continue
        if lazy:
            child = _settle(kids, kstrict, spec, fmax)
            if child is not None:
                _descend_group(child, spec, fmax, tally)
        else:
            _record(tally, N + 1, kids, kcanon, kstrict)
            _descend(kids, kcanon, kstrict, spec, fmax, tally)


def _settle(kids, kstrict, spec: _RunSpec, fmax: int):
    """Order-test only those unchecked simplices that can have children.

    A simplex whose characteristic is unique within its group pairs with
    nothing but itself, and the self pair only yields its mirror image. When
    that mirror distance is not an integer in range, the simplex is dropped
    without deciding whether it belongs to the list at all. Counts for this
    level are therefore not recorded.
    """
    group = _Group(kids, [None] * len(kids), kstrict, spec.m, spec.position, True)
    n = group.N
    cut = len(kids[0].word) - (n - 1)
    allpts = list(range(n))
    drop = [allpts[:k] + allpts[k + 1 :] for k in range(n - 1)]
    keep, canon = [], []
    for idx, z in enumerate(kids):
        key = group.keys[idx]
        if key is not None and len(group.buckets[key]) == 1:
            w, s = group.ws[idx], group.sigmas[idx]
            k0 = -sum(map(mul, w, group.vs[idx]))
            if not solve_completion(k0, s * s, group.base.cmd, group.mode, min(fmax, z.word[0])):
                continue
        rows, zw = z.rows, z.word
        is_canon = not beats(rows, allpts, zw)
        if not is_canon and any(beats(rows, pts, zw[:cut]) for pts in drop):
            continue
        keep.append(idx)
        canon.append(is_canon)
    if not keep:
        return None
    group.restrict(keep)
    group.canon = canon
    return group


def _segments(delta: int) -> list[DistanceMatrix]:
    return [DistanceMatrix._trusted(2, (d,), ((0, d), (d, 0))) for d in range(delta, 0, -1)]


def _triangle_group(delta: int, spec: _RunSpec, tally: Tally):
    """Triangles of diameter exactly ``delta`` (the children of the longest segment)."""
    segs = _segments(delta)
    ones = [True] * len(segs)
    group = _Group(segs, ones, ones, spec.m, spec.position, False)
    partners = range(len(segs))
    tally.pairs[3] += len(partners)
    final = spec.target == 3 and not spec.count_next
    kids, kcanon, kstrict = group.children(0, partners, delta, final, spec.track_general)
    if kids:
        _record(tally, 3, kids, kcanon, kstrict)
    return kids, kcanon, kstrict


def _subtree_task(args) -> Tally:
    delta, spec, chunk = args
    tally = Tally()
    kids, kcanon, kstrict = _triangle_group(delta, spec, Tally())
    _descend(kids, kcanon, kstrict, spec, delta, tally, only=chunk)
    return tally


def sweep_diameter(
    delta: int,
    m: int,
    target: int,
    position: PositionMode = PositionMode.SEMI_GENERAL,
    prune: bool = True,
    track_general: bool = False,
    count_next: bool = False,
    workers: int | None = None,
    skip_simplices: bool = False,
) -> Tally:
    """Enumerate every set of diameter exactly ``delta`` with up to ``target`` points.

    The run is depth first: only the groups on the current branch are held in
    memory. With ``workers > 1`` the subtrees below the triangle level are
    farmed out to processes; the merged tally does not depend on the schedule.
    ``skip_simplices`` trades the m-simplex counts (left out of the tally)
    for speed when only larger sets matter.
    """
    if delta < 1 or target < 2:
        return Tally()
    spec = _RunSpec(m, PositionMode(position), prune, target, track_general, count_next, skip_simplices)
    tally = Tally()
    tally.semi[2] += 1
    tally.canon[2] += 1
    tally.best[2] = (delta,)
    if spec.position is not PositionMode.ANY or m == 1:
        tally.best_strict[2] = (delta,)
        tally.canon_strict[2] += 1
    if target == 2:
        return tally
    kids, kcanon, kstrict = _triangle_group(delta, spec, tally)
    if not kids:
        return tally
    workers = worker_count() if workers is None else workers
    if target == 3:
        if count_next:
            _descend(kids, kcanon, kstrict, spec, delta, tally)
        return tally
    if workers <= 1:
        _descend(kids, kcanon, kstrict, spec, delta, tally)
        return tally
    canon_idx = [i for i, c in enumerate(kcanon) if c]
    # the pair counter also runs over non-canonical members
    skipped = [i for i, c in enumerate(kcanon) if not c]
    chunks = [canon_idx[w::workers] for w in range(workers)]
    chunks[0] = sorted(chunks[0] + skipped)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_subtree_task, [(delta, spec, c) for c in chunks if c]):
            tally.merge(part)
    return tally


# -- list-level operations ---------------------------------------------------


def base_lists(delta: int) -> tuple[CandidateList, CandidateList]:
    segs = _segments(delta) if delta >= 1 else []
    return (
        CandidateList(1, 2, max(delta, 0), "c", list(segs)),
        CandidateList(1, 2, max(delta, 0), "s", list(segs)),
    )


def _split_groups(items: list[DistanceMatrix]):
    if not items:
        return
    plen = len(items[0].word) - (items[0].n - 1)
    start = 0
    for k in range(1, len(items) + 1):
        if k == len(items) or items[k].word[:plen] != items[start].word[:plen]:
            yield start, k
            start = k


def _extend_lists(Mc: CandidateList, Ms: CandidateList, m: int, delta: int,
                  position: PositionMode, prune: bool):
    canonical = set(it.word for it in Mc.items)
    track = position is PositionMode.GENERAL
    out_c, out_s = [], []
    executed = 0
    pruned_total = unpruned_total = 0
    for lo, hi in _split_groups(Ms.items):
        items = Ms.items[lo:hi]
        canon = [it.word in canonical for it in items]
        ones = [True] * len(items)
        group = _Group(items, canon, ones, m, position, True)
        pr, un = group.pair_counts()
        pruned_total += pr
        unpruned_total += un
        for i in range(len(items)):
            partners = group.partners(i) if prune else range(i, len(items))
            executed += len(partners)
            if not canon[i]:
                continue
            kids, kcanon, _ = group.children(i, partners, delta, False, track)
            out_s.extend(kids)
            out_c.extend(k for k, c in zip(kids, kcanon) if c)
    n = Ms.n + 1
    expected = pruned_total if prune else unpruned_total
    if executed != expected:
        raise AssertionError("pair counter disagrees with group counts")
    stats = StatsRecord(m, delta, pruned_total, unpruned_total, len(Ms.items))
    return CandidateList(m, n, delta, "c", out_c), CandidateList(m, n, delta, "s", out_s), stats


def lift_simplices(Lc: CandidateList, Ls: CandidateList, m_target: int, delta: int):
    """Canonical and semi-canonical ``m_target``-simplices from the next-lower simplex lists."""
    if Ls.n != m_target:
        raise ValueError(f"lifting to dimension {m_target} needs {m_target}-point simplices")
    c, s, _ = _extend_lists(Lc, Ls, m_target, delta, PositionMode.SEMI_GENERAL, True)
    return c, s


def extend_pointsets(Mc: CandidateList, Ms: CandidateList, m: int, delta: int, prune: bool = True,
                     position: PositionMode = PositionMode.SEMI_GENERAL):
    """One orderly-generation step for m-dimensional point sets.

    Returns the canonical list, the semi-canonical list and a StatsRecord whose
    ``psi``/``psi_hat`` are the pair counts with and without characteristic
    pruning (``alpha_tilde`` is the number of semi-canonical inputs).
    """
    return _extend_lists(Mc, Ms, m, delta, PositionMode(position), prune)


def enumerate_lists(m: int, n: int, delta: int,
                    position: PositionMode = PositionMode.SEMI_GENERAL,
                    prune: bool = True, start=None):
    """Canonical and semi-canonical lists of n-point sets with diameter <= delta.

    ``start`` optionally supplies a ``(canonical, semi-canonical)`` pair of
    lists to resume from.
    """
    position = PositionMode(position)
    lc, ls = start if start is not None else base_lists(delta)
    lc = CandidateList(m, lc.n, delta, "c", lc.items)
    ls = CandidateList(m, ls.n, delta, "s", ls.items)
    while ls.n < n:
        lc, ls, _ = _extend_lists(lc, ls, m, delta, position, prune)
    return lc, ls


def filter_general_position(cands: CandidateList, m: int) -> CandidateList:
    from .metric import is_general_position

    if cands.n <= m + 1:
        return CandidateList(cands.m, cands.n, cands.delta, cands.kind, list(cands.items))
    kept = [it for it in cands.items if is_general_position(it, m)]
    return CandidateList(cands.m, cands.n, cands.delta, cands.kind, kept)


def extend_with_degenerate(m: int, n: int, delta: int) -> CandidateList:
    """Canonical integral n-point sets of diameter <= delta that span m dimensions.

    Flat subsets (m+1 points on a hyperplane, collinear triples, ...) are
    allowed; only the whole set has to be m-dimensional.
    """
    from .metric import affine_dimension

    lc, _ = enumerate_lists(m, n, delta, PositionMode.ANY)
    return CandidateList(m, n, delta, "c", [it for it in lc.items if affine_dimension(it) == m])


def run_statistics(m: int, deltas, with_and_without_pruning: bool = True,
                   workers: int | None = None) -> list[StatsRecord]:
    """Combine-call counts for extending m-simplices to (m+2)-point sets, per diameter.

    ``psi`` counts pairs of equal characteristic, ``psi_hat`` all pairs and
    ``alpha_tilde`` the semi-canonical m-simplices of diameter exactly delta.
    The counts are read off the simplex groups; no combine call is needed.
    """
    out = []
    for delta in deltas:
        tally = sweep_diameter(delta, m, m + 1, PositionMode.SEMI_GENERAL, prune=True,
                               count_next=True, workers=workers)
        out.append(StatsRecord(
            m, delta, tally.next_pruned,
            tally.next_unpruned if with_and_without_pruning else None,
            tally.semi[m + 1],
        ))
        log.info("stats m=%d delta=%d: %s", m, delta, out[-1])
    return out
