"""Minimum diameters of integral point sets by exhaustive search over the diameter."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

from .enumerator import PositionMode, sweep_diameter
from .metric import DistanceMatrix

__all__ = ["SearchReport", "NotFoundWithinBound", "min_diameter", "min_diameters"]

log = logging.getLogger(__name__)


class NotFoundWithinBound(LookupError):
    def __init__(self, m: int, n: int, mode: PositionMode, delta_max: int):
        super().__init__(f"no {mode.value} set of {n} points in dimension {m} with diameter <= {delta_max}")
        self.m, self.n, self.mode, self.delta_max = m, n, mode, delta_max


@dataclass
class SearchReport:
    m: int
    n: int
    mode: PositionMode
    min_diameter: int
    witness: DistanceMatrix
    elapsed: float = 0.0
    combine_calls: int = 0
    canonical_counts: dict = field(default_factory=dict)  # delta -> canonical sets of exactly n points


def _check(m: int, n: int) -> None:
    if m < 1:
        raise ValueError("dimension must be positive")
    if n <= m:
        raise ValueError(f"n must exceed the dimension (got m={m}, n={n})")


def min_diameters(m: int, ns, modes, delta_max: int, workers: int | None = None) -> dict:
    """Minimum diameters for several point counts and position modes in one sweep.

    Returns ``{(n, mode): SearchReport}``; pairs not reached within
    ``delta_max`` are absent. Semi-general and general position share a single
    enumeration, the general flag being carried along the search tree.
    """
    ns = sorted(set(ns))
    modes = [PositionMode(x) for x in modes]
    for n in ns:
        _check(m, n)
    runs = []
    if PositionMode.ANY in modes:
        runs.append((PositionMode.ANY, [PositionMode.ANY]))
    tracked = [x for x in modes if x is not PositionMode.ANY]
    if tracked:
        engine = PositionMode.SEMI_GENERAL if PositionMode.SEMI_GENERAL in tracked else PositionMode.GENERAL
        runs.append((engine, tracked))
    found: dict = {}
    counts: dict = {(n, x): {} for n in ns for x in modes}
    start = time.monotonic()
    for engine, reported in runs:
        calls = 0
        open_ = {(n, x) for n in ns for x in reported}
        for delta in range(1, delta_max + 1):
            if not open_:
                break
            target = max(n for n, _ in open_)
            tally = sweep_diameter(
                delta, m, target, engine,
                track_general=PositionMode.GENERAL in reported and engine is not PositionMode.GENERAL,
                workers=workers,
                skip_simplices=min(n for n, _ in open_) > m + 1,
            )
            calls += tally.combine_calls()
            for n, x in sorted(open_, key=lambda k: (k[0], k[1].value)):
                # general position, or spanning all m dimensions when unrestricted
                strict = x is not PositionMode.SEMI_GENERAL
                counts[(n, x)][delta] = (tally.canon_strict if strict else tally.canon)[n]
                best = (tally.best_strict if strict else tally.best).get(n)
                if best is not None:
                    found[(n, x)] = SearchReport(
                        m, n, x, delta, DistanceMatrix.from_word(best, n),
                        time.monotonic() - start, calls, counts[(n, x)],
                    )
                    open_.discard((n, x))
                    log.info("m=%d n=%d %s: diameter %d", m, n, x.value, delta)
            log.debug("m=%d delta=%d done, still open: %s", m, delta, sorted((n, x.value) for n, x in open_))
    return found


def min_diameter(m: int, n: int, mode: PositionMode | str = PositionMode.SEMI_GENERAL,
                 delta_max: int = 100, workers: int | None = None) -> SearchReport:
    """Smallest diameter of an m-dimensional integral n-point set in the given position mode.

    Unrestricted sets must still span all m dimensions; flat subsets are allowed.
    """
    mode = PositionMode(mode)
    found = min_diameters(m, [n], [mode], delta_max, workers)
    if (n, mode) not in found:
        raise NotFoundWithinBound(m, n, mode, delta_max)
    return found[(n, mode)]
