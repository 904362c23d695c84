"""
The nine triple kinds: adjacency between two ordered sets ``X`` and ``X'``
of size ``k``.

``triple_adjacent(kind, k, j, jp)`` tells whether ``u^j`` in ``X`` (rows) is
adjacent to ``v^jp`` in ``X'`` (columns). The relation is not symmetric in
``(j, jp)``.
"""

import enum
import logging
from typing import FrozenSet, NamedTuple, Optional

from .config import Caps, resolve_caps
from .errors import InvalidTripleError
from .gf2 import Gf2Matrix

logger = logging.getLogger(__name__)


class TripleKind(str, enum.Enum):
    REGULAR_MATCHING = "regular_matching"
    REGULAR_ANTIMATCHING = "regular_antimatching"
    REGULAR_CROSSING = "regular_crossing"
    EXPANDING_MATCHING = "expanding_matching"
    EXPANDING_ANTIMATCHING = "expanding_antimatching"
    EXPANDING_CROSSING = "expanding_crossing"
    SKEW_EXPANDING_MATCHING = "skew_expanding_matching"
    SKEW_EXPANDING_ANTIMATCHING = "skew_expanding_antimatching"
    SKEW_EXPANDING_CROSSING = "skew_expanding_crossing"

    @property
    def is_regular(self) -> bool:
        return self.value.startswith("regular_")

    @property
    def is_expanding(self) -> bool:
        return self.value.startswith("expanding_")

    @property
    def is_skew(self) -> bool:
        return self.value.startswith("skew_")

    @property
    def is_cross(self) -> bool:
        return self.value.endswith("_crossing")

    @property
    def is_parallel(self) -> bool:
        return not self.is_cross

    @property
    def is_matching(self) -> bool:
        return self.value.endswith("_matching") and not self.is_antimatching

    @property
    def is_antimatching(self) -> bool:
        return self.value.endswith("_antimatching")


class SkewRanges(NamedTuple):
    """Row-range boundaries for the skew kinds (k = 2 mod 4)."""

    low: int  # rows 1..low
    half: int  # k / 2
    high: int  # rows low+1..high; rows high+1..k form the last range


def skew_ranges(k: int) -> SkewRanges:
    if k % 4 != 2:
        raise InvalidTripleError(f"skew triples need k = 2 mod 4, got k={k}")
    ranges = SkewRanges(low=(k - 2) // 4, half=k // 2, high=(3 * k + 2) // 4)
    # rows 1..low, low+1..high and high+1..k tile 1..k
    assert 0 <= ranges.low < ranges.half < ranges.high <= k, ranges
    return ranges


def parse_kind(name: str) -> TripleKind:
    try:
        return TripleKind(name.strip().lower())
    except ValueError:
        raise InvalidTripleError(f"unknown triple kind '{name}'") from None


def validate_kind(kind: TripleKind, k: int) -> None:
    """Raise ``InvalidTripleError`` unless ``kind`` is defined for size ``k``."""
    kind = TripleKind(kind)
    if k < 1:
        raise InvalidTripleError(f"triple size must be at least 1, got {k}")
    if kind.is_skew:
        skew_ranges(k)


def triple_adjacent(kind: TripleKind, k: int, j: int, jp: int) -> bool:
    kind = TripleKind(kind)
    validate_kind(kind, k)
    if not (1 <= j <= k and 1 <= jp <= k):
        raise InvalidTripleError(f"indices ({j}, {jp}) outside 1..{k}")
    return _adjacent(kind, k, j, jp)


def _adjacent(kind: TripleKind, k: int, j: int, jp: int) -> bool:
    """Unchecked formula; callers guarantee the kind/k pair and index ranges."""
    if kind is TripleKind.REGULAR_MATCHING:
        return j == jp
    if kind is TripleKind.REGULAR_ANTIMATCHING:
        return j != jp
    if kind is TripleKind.REGULAR_CROSSING:
        # j + j' >= k + 1
        return j + jp >= k + 1
    if kind is TripleKind.EXPANDING_MATCHING:
        # j' = 2j or j' = 2j + 1
        return jp == 2 * j or jp == 2 * j + 1
    if kind is TripleKind.EXPANDING_ANTIMATCHING:
        # j' != 2j and j' != 2j + 1
        return jp != 2 * j and jp != 2 * j + 1
    if kind is TripleKind.EXPANDING_CROSSING:
        # 2j + j' >= 2k + 2
        return 2 * j + jp >= 2 * k + 2

    low, half, high = (k - 2) // 4, k // 2, (3 * k + 2) // 4
    if kind is TripleKind.SKEW_EXPANDING_CROSSING:
        if j <= low:
            # 2j + j' >= k
            return 2 * j + jp >= k
        if j <= half:
            # j' >= k/2 + 1
            return jp >= half + 1
        if j <= high:
            # j' >= k/2 - 1
            return jp >= half - 1
        # 2j + j' - 2 >= 2k
        return 2 * j + jp - 2 >= 2 * k

    if j <= low:
        # both skew parallel kinds: j' = 2j or j' = 2j + 1
        return jp == 2 * j or jp == 2 * j + 1
    if j <= high:
        # middle rows: no edges (matching), all edges (antimatching)
        return kind is TripleKind.SKEW_EXPANDING_ANTIMATCHING
    # j' = 2j - k - 2 or j' = 2j - k - 1
    return jp == 2 * j - k - 2 or jp == 2 * j - k - 1


def expanding_image(j: int, k: int) -> FrozenSet[int]:
    """Columns an expanding parallel triple pairs with row ``j``: {2j, 2j+1} ∩ [1, k]."""
    if not 1 <= j <= k:
        raise InvalidTripleError(f"row {j} outside 1..{k}")
    return frozenset(c for c in (2 * j, 2 * j + 1) if c <= k)


def triple_matrix(kind: TripleKind, k: int, caps: Optional[Caps] = None) -> Gf2Matrix:
    """The k x k matrix of the triple (rows X, columns X')."""
    kind = TripleKind(kind)
    validate_kind(kind, k)
    resolve_caps(caps).check("triple_matrix", k)
    rows = []
    for j in range(1, k + 1):
        bits = 0
        for jp in range(1, k + 1):
            if _adjacent(kind, k, j, jp):
                bits |= 1 << (jp - 1)
        rows.append(bits)
    return Gf2Matrix(k, k, tuple(rows))
