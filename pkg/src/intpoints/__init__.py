"""Exact enumeration of integral point sets in Euclidean space.

The package generates integral point sets (finite point sets with all mutual
distances integral) up to isometry by orderly generation on distance matrices,
and searches for their minimum diameters in several position modes.
"""

from .canonical import canonize, compare, is_canonical, is_semi_canonical, word
from .combiner import Mode, cmd_polynomial, combine, merge_frame
from .enumerator import (
    CandidateList,
    PositionMode,
    StatsRecord,
    base_lists,
    enumerate_lists,
    extend_pointsets,
    extend_with_degenerate,
    filter_general_position,
    lift_simplices,
    run_statistics,
)
from .exact import det_exact, factorize, isqrt, squarefree_part
from .listio import load_list, save_list
from .metric import (
    CoordinateRepresentation,
    DistanceMatrix,
    characteristic,
    cmd,
    coordinates,
    is_general_position,
    is_realizable,
    is_semi_general_position,
    on_common_sphere,
    volume_squared,
)
from .search import NotFoundWithinBound, SearchReport, min_diameter, min_diameters

__version__ = "0.1.0"
